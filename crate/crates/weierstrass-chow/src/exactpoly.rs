//! Sparse multivariate polynomials over arbitrary-precision integers with
//! per-variable grading weights.
//!
//! Terms are kept in a map ordered by graded-lex on exponent vectors
//! (weighted degree first, then lex with earlier variables dominating), so
//! every polynomial has a unique canonical form and deterministic text
//! rendering.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution for `{var}` must be homogeneous of weight {expected}")]
    GradingViolation { var: String, expected: u64 },
    #[error("the zero polynomial has no weighted degree")]
    ZeroPolynomial,
    #[error("duplicate variable `{0}` in ring spec")]
    DuplicateVariable(String),
    #[error("variable weights must be >= 1")]
    ZeroWeight,
    #[error("evaluation point has wrong dimension")]
    BadPoint,
}

/// An ordered list of graded variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    vars: Vec<(String, u64)>,
}

impl RingSpec {
    pub fn new(vars: &[(&str, u64)]) -> Result<Arc<RingSpec>, PolyError> {
        let mut seen = Vec::new();
        for (name, w) in vars {
            if *w == 0 {
                return Err(PolyError::ZeroWeight);
            }
            if seen.contains(name) {
                return Err(PolyError::DuplicateVariable(name.to_string()));
            }
            seen.push(name);
        }
        Ok(Arc::new(RingSpec {
            vars: vars.iter().map(|(n, w)| (n.to_string(), *w)).collect(),
        }))
    }

    /// The rank-two character ring Z[l1, l2].
    pub fn l1_l2() -> Arc<RingSpec> {
        RingSpec::new(&[("l1", 1), ("l2", 1)]).unwrap()
    }

    /// The rank-one character ring Z[l].
    pub fn l() -> Arc<RingSpec> {
        RingSpec::new(&[("l", 1)]).unwrap()
    }

    /// Z[l1, l2, xi], used before the hyperplane class is substituted.
    pub fn l1_l2_xi() -> Arc<RingSpec> {
        RingSpec::new(&[("l1", 1), ("l2", 1), ("xi", 1)]).unwrap()
    }

    /// Z[tau, c2, c3] with weights 1, 2, 3.
    pub fn tau_c2_c3() -> Arc<RingSpec> {
        RingSpec::new(&[("tau", 1), ("c2", 2), ("c3", 3)]).unwrap()
    }

    /// Z[c1, c2] with weights 1, 2.
    pub fn c1_c2() -> Arc<RingSpec> {
        RingSpec::new(&[("c1", 1), ("c2", 2)]).unwrap()
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = (&str, u64)> {
        self.vars.iter().map(|(n, w)| (n.as_str(), *w))
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn var_name(&self, idx: usize) -> &str {
        &self.vars[idx].0
    }

    pub fn weight(&self, idx: usize) -> u64 {
        self.vars[idx].1
    }
}

/// Exponent vector with its weighted degree cached so the term order is a
/// plain lexicographic comparison on (degree, exponents).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u64,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(ring: &RingSpec, exps: Vec<u32>) -> Monomial {
        assert_eq!(exps.len(), ring.num_vars(), "exponent vector length");
        let degree = exps
            .iter()
            .zip(ring.vars())
            .map(|(e, (_, w))| *e as u64 * w)
            .sum();
        Monomial { degree, exps }
    }

    pub fn one(ring: &RingSpec) -> Monomial {
        Monomial::new(ring, vec![0; ring.num_vars()])
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            degree: self.degree - other.degree,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial, ring: &RingSpec) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::new(ring, exps)
    }
}

/// Weighted degree of a nonzero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(u64),
    Inhomogeneous,
}

/// A canonical-form sparse polynomial: no zero coefficients are ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<RingSpec>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<RingSpec>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: impl Into<BigInt>) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring), c);
        }
        p
    }

    pub fn var(ring: &Arc<RingSpec>, name: &str) -> Result<Polynomial, PolyError> {
        let idx = ring.var_index(name)?;
        let mut exps = vec![0u32; ring.num_vars()];
        exps[idx] = 1;
        let mut p = Polynomial::zero(ring);
        p.terms.insert(Monomial::new(ring, exps), BigInt::one());
        Ok(p)
    }

    /// Degree-one combination `sum coeffs[i] * var_i`.
    pub fn linear(ring: &Arc<RingSpec>, coeffs: &[i64]) -> Polynomial {
        assert_eq!(coeffs.len(), ring.num_vars());
        let mut p = Polynomial::zero(ring);
        for (i, c) in coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let mut exps = vec![0u32; ring.num_vars()];
            exps[i] = 1;
            p.terms.insert(Monomial::new(ring, exps), BigInt::from(*c));
        }
        p
    }

    pub fn from_terms(
        ring: &Arc<RingSpec>,
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (exps, c) in terms {
            p.add_term(Monomial::new(ring, exps), c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn remove_term(&mut self, m: &Monomial) {
        self.terms.remove(m);
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m1, c1)| (m1.mul(m), c1 * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(&self.ring, 1);
        for _ in 0..e {
            out = out.mul(self).unwrap();
        }
        out
    }

    /// Graded substitution of a single variable. The value must be zero or
    /// homogeneous of the variable's weight, and live in the same ring; the
    /// result has exponent 0 for `var` everywhere.
    pub fn substitute(&self, var: &str, value: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(value)?;
        let idx = self.ring.var_index(var)?;
        let w = self.ring.weight(idx);
        if !value.is_zero() {
            match value.weighted_degree()? {
                Degree::Homogeneous(d) if d == w => {}
                _ => {
                    return Err(PolyError::GradingViolation {
                        var: var.to_string(),
                        expected: w,
                    })
                }
            }
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[idx];
            let mut rest = m.exps().to_vec();
            rest[idx] = 0;
            let base = Polynomial {
                ring: self.ring.clone(),
                terms: BTreeMap::from([(Monomial::new(&self.ring, rest), c.clone())]),
            };
            out = out.add(&base.mul(&value.pow(e))?)?;
        }
        Ok(out)
    }

    /// Ring homomorphism into `target` sending variable `i` to `images[i]`.
    pub fn map_vars(
        &self,
        target: &Arc<RingSpec>,
        images: &[Polynomial],
    ) -> Result<Polynomial, PolyError> {
        if images.len() != self.ring.num_vars() {
            return Err(PolyError::BadPoint);
        }
        for im in images {
            if im.ring != *target {
                return Err(PolyError::RingMismatch);
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target, c.clone());
            for (i, e) in m.exps().iter().enumerate() {
                if *e > 0 {
                    acc = acc.mul(&images[i].pow(*e))?;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    pub fn weighted_degree(&self) -> Result<Degree, PolyError> {
        let mut deg = None;
        if self.terms.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d == m.degree() => {}
                Some(_) => return Ok(Degree::Inhomogeneous),
            }
        }
        Ok(Degree::Homogeneous(deg.unwrap()))
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(self.weighted_degree(), Ok(Degree::Homogeneous(_)))
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.ring.num_vars() {
            return Err(PolyError::BadPoint);
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in point.iter().zip(m.exps()) {
                v *= x.pow(*e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Coefficient vector of a degree-one polynomial, one slot per variable.
    pub fn linear_coefficients(&self) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.ring.num_vars()];
        for (m, c) in &self.terms {
            let mut found = None;
            for (i, e) in m.exps().iter().enumerate() {
                match (*e, found) {
                    (0, _) => {}
                    (1, None) => found = Some(i),
                    _ => return None,
                }
            }
            out[found?] = c.clone();
        }
        Some(out)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form: `c*v1^e1*v2^e2` terms in descending graded-lex
    /// order, joined with ` + ` / ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (idx, e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(idx).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(idx), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_vars() -> (Arc<RingSpec>, Polynomial, Polynomial) {
        let ring = RingSpec::l1_l2();
        let l1 = Polynomial::var(&ring, "l1").unwrap();
        let l2 = Polynomial::var(&ring, "l2").unwrap();
        (ring, l1, l2)
    }

    #[test]
    fn add_cancels() {
        let (ring, l1, _) = l_vars();
        let sum = l1.add(&l1.neg()).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum, Polynomial::zero(&ring));
    }

    #[test]
    fn f1_cofactor_sum_at_g2() {
        // (6g*l1 + 2g*l2) + (-2)*((g-1)*l1 - (g+1)*l2) at g = 2
        let (ring, _, _) = l_vars();
        let g1 = Polynomial::linear(&ring, &[12, 4]);
        let g2 = Polynomial::linear(&ring, &[1, -3]);
        let sum = g1.add(&g2.scale(&BigInt::from(-2))).unwrap();
        assert_eq!(sum, Polynomial::linear(&ring, &[10, 10]));
    }

    #[test]
    fn mul_difference_of_squares() {
        let (ring, l1, l2) = l_vars();
        let a = l1.sub(&l2.scale(&BigInt::from(3))).unwrap();
        let b = l1.add(&l2.scale(&BigInt::from(3))).unwrap();
        let prod = a.mul(&b).unwrap();
        let expect = Polynomial::from_terms(
            &ring,
            [
                (vec![2, 0], BigInt::from(1)),
                (vec![0, 2], BigInt::from(-9)),
            ],
        );
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_p_factors_g3() {
        // product of the i = 2g+1 and i = 2g factors of p at g = 3:
        // (-2l1 + 3l2)(-2l1 + 2l2) = 4l1^2 - 10 l1 l2 + 6 l2^2
        let (ring, _, _) = l_vars();
        let a = Polynomial::linear(&ring, &[-2, 3]);
        let b = Polynomial::linear(&ring, &[-2, 2]);
        let expect = Polynomial::from_terms(
            &ring,
            [
                (vec![2, 0], BigInt::from(4)),
                (vec![1, 1], BigInt::from(-10)),
                (vec![0, 2], BigInt::from(6)),
            ],
        );
        assert_eq!(a.mul(&b).unwrap(), expect);
    }

    #[test]
    fn grading_additivity() {
        let (_, l1, l2) = l_vars();
        let d1 = l1.add(&l2).unwrap();
        let d2 = l1.mul(&l2).unwrap().sub(&l1.mul(&l1).unwrap()).unwrap();
        let prod = d1.mul(&d2).unwrap();
        assert_eq!(prod.weighted_degree().unwrap(), Degree::Homogeneous(3));
    }

    #[test]
    fn substitute_square() {
        let ring = RingSpec::l1_l2_xi();
        let xi = Polynomial::var(&ring, "xi").unwrap();
        let sub = Polynomial::linear(&ring, &[1, 1, 0]);
        let out = xi.pow(2).substitute("xi", &sub).unwrap();
        let expect = Polynomial::from_terms(
            &ring,
            [
                (vec![2, 0, 0], BigInt::from(1)),
                (vec![1, 1, 0], BigInt::from(2)),
                (vec![0, 2, 0], BigInt::from(1)),
            ],
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn substitute_alpha10_even_g2() {
        // alpha_{1,0}(xi) = 2(N-1)xi - N(N-1)(l1+l2) at N = 5 and
        // xi = (g-1)l1 + g*l2 = l1 + 2l2 gives -12l1 - 4l2.
        let ring = RingSpec::l1_l2_xi();
        let xi = Polynomial::var(&ring, "xi").unwrap();
        let alpha = xi
            .scale(&BigInt::from(8))
            .sub(&Polynomial::linear(&ring, &[20, 20, 0]))
            .unwrap();
        let image = alpha
            .substitute("xi", &Polynomial::linear(&ring, &[1, 2, 0]))
            .unwrap();
        assert_eq!(image, Polynomial::linear(&ring, &[-12, -4, 0]));
    }

    #[test]
    fn substitute_rejects_grading_violation() {
        let ring = RingSpec::l1_l2_xi();
        let xi = Polynomial::var(&ring, "xi").unwrap();
        let quadratic = Polynomial::var(&ring, "l1").unwrap().pow(2);
        assert!(matches!(
            xi.substitute("xi", &quadratic),
            Err(PolyError::GradingViolation { .. })
        ));
    }

    #[test]
    fn weighted_degree_tau_ring() {
        let ring = RingSpec::tau_c2_c3();
        let tau = Polynomial::var(&ring, "tau").unwrap();
        let c2 = Polynomial::var(&ring, "c2").unwrap();
        let c3 = Polynomial::var(&ring, "c3").unwrap();
        let p = tau
            .pow(3)
            .add(&tau.mul(&c2).unwrap())
            .unwrap()
            .sub(&c3)
            .unwrap();
        assert_eq!(p.weighted_degree().unwrap(), Degree::Homogeneous(3));
    }

    #[test]
    fn weighted_degree_inhomogeneous_and_zero() {
        let (ring, l1, l2) = l_vars();
        let p = l1.add(&l2.pow(2)).unwrap();
        assert_eq!(p.weighted_degree().unwrap(), Degree::Inhomogeneous);
        assert_eq!(
            Polynomial::zero(&ring).weighted_degree(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn ring_mismatch_rejected() {
        let (_, l1, _) = l_vars();
        let other = Polynomial::var(&RingSpec::l(), "l").unwrap();
        assert_eq!(l1.add(&other), Err(PolyError::RingMismatch));
    }

    #[test]
    fn canonical_text_form() {
        let (ring, l1, l2) = l_vars();
        let p = l1
            .pow(2)
            .scale(&BigInt::from(3))
            .sub(&l1.mul(&l2).unwrap())
            .unwrap()
            .add(&Polynomial::constant(&ring, -7))
            .unwrap();
        assert_eq!(p.to_string(), "3*l1^2 - l1*l2 - 7");
        assert_eq!(Polynomial::zero(&ring).to_string(), "0");
    }
}
