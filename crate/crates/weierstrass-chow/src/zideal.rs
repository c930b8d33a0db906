//! Ideal arithmetic over the integers: strong Groebner bases via Buchberger
//! extended with GCD-polynomials, deterministic normal forms, and exact
//! cofactor certificates.
//!
//! The term order is the graded-lex order baked into `exactpoly`. Basis
//! elements are sign-normalized to positive leading coefficients, and
//! reduction brings every coefficient into the residue range `[0, lc)` of
//! the applicable basis element with the smallest leading coefficient, so
//! remainders are unique.

use crate::exactpoly::{PolyError, Polynomial, RingSpec};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum IdealError {
    #[error("ideal generators must be nonzero")]
    ZeroGenerator,
    #[error("ideal generators must be homogeneous")]
    InhomogeneousGenerator,
    #[error("certificate cofactor count does not match generator count")]
    LengthMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finitely generated graded ideal in Z[vars].
#[derive(Debug, Clone)]
pub struct IdealZ {
    ring: Arc<RingSpec>,
    generators: Vec<Polynomial>,
}

impl IdealZ {
    pub fn new(ring: &Arc<RingSpec>, generators: Vec<Polynomial>) -> Result<IdealZ, IdealError> {
        for g in &generators {
            if g.is_zero() {
                return Err(IdealError::ZeroGenerator);
            }
            if !g.is_homogeneous() {
                return Err(IdealError::InhomogeneousGenerator);
            }
            if g.ring() != ring {
                return Err(IdealError::Poly(PolyError::RingMismatch));
            }
        }
        Ok(IdealZ {
            ring: ring.clone(),
            generators,
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

/// A strong Groebner basis over Z: normal forms against it are unique and
/// vanish exactly on ideal members.
#[derive(Debug, Clone)]
pub struct StrongGroebnerBasis {
    ring: Arc<RingSpec>,
    basis: Vec<Polynomial>,
    term_order: &'static str,
}

const TERM_ORDER: &str = "graded-lex";

fn sign_normalized(p: Polynomial) -> Polynomial {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// Full reduction: every term of the result is irreducible. A term c*m is
/// reduced with the applicable basis element of smallest leading
/// coefficient, leaving c mod lc.
fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let mut work = p.clone();
    let mut rem = Polynomial::zero(&ring);
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut best: Option<&Polynomial> = None;
        for b in basis {
            let (bm, bc) = b.leading().unwrap();
            if bm.divides(&m) {
                let better = match best {
                    None => true,
                    Some(cur) => bc < cur.leading().unwrap().1,
                };
                if better {
                    best = Some(b);
                }
            }
        }
        let mut reduced = false;
        if let Some(b) = best {
            let (bm, bc) = b.leading().unwrap();
            let (q, _r) = c.div_mod_floor(bc);
            if !q.is_zero() {
                work = work.sub(&b.mul_term(&m.div(bm), &q)).unwrap();
                reduced = true;
            }
        }
        if !reduced {
            rem.add_term(m.clone(), c);
            work.remove_term(&m);
        }
    }
    rem
}

fn spoly(ring: &Arc<RingSpec>, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading().unwrap();
    let (mg, cg) = g.leading().unwrap();
    let l = mf.lcm(mg, ring);
    let c = cf.lcm(cg);
    f.mul_term(&l.div(mf), &(&c / cf))
        .sub(&g.mul_term(&l.div(mg), &(&c / cg)))
        .unwrap()
}

/// GCD-polynomial; `None` when one leading coefficient divides the other
/// (the combination is then a monomial multiple of a basis element).
fn gpoly(ring: &Arc<RingSpec>, f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let (mf, cf) = f.leading().unwrap();
    let (mg, cg) = g.leading().unwrap();
    if (cg % cf).is_zero() || (cf % cg).is_zero() {
        return None;
    }
    let l = mf.lcm(mg, ring);
    let ext = cf.extended_gcd(cg);
    Some(
        f.mul_term(&l.div(mf), &ext.x)
            .add(&g.mul_term(&l.div(mg), &ext.y))
            .unwrap(),
    )
}

pub fn strong_groebner(ideal: &IdealZ) -> StrongGroebnerBasis {
    let ring = ideal.ring().clone();
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in ideal.generators() {
        let g = sign_normalized(g.clone());
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push_back((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let mut candidates = vec![spoly(&ring, &basis[i], &basis[j])];
        if let Some(g) = gpoly(&ring, &basis[i], &basis[j]) {
            candidates.push(g);
        }
        for cand in candidates {
            let nf = sign_normalized(reduce(&cand, &basis));
            if !nf.is_zero() {
                for k in 0..basis.len() {
                    pairs.push_back((k, basis.len()));
                }
                basis.push(nf);
            }
        }
    }
    // Auto-reduce to a fixpoint: each element is reduced against the live
    // rest of the basis, so of two mutually reducible elements exactly one
    // survives.
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < basis.len() {
            let p = basis.remove(i);
            let nf = sign_normalized(reduce(&p, &basis));
            if nf.is_zero() {
                changed = true;
            } else {
                if nf != p {
                    changed = true;
                }
                basis.insert(i, nf);
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| {
        let (ma, ca) = a.leading().unwrap();
        let (mb, cb) = b.leading().unwrap();
        ma.cmp(mb).then(ca.cmp(cb)).then_with(|| {
            a.to_string().cmp(&b.to_string())
        })
    });
    StrongGroebnerBasis {
        ring,
        basis,
        term_order: TERM_ORDER,
    }
}

impl StrongGroebnerBasis {
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn term_order(&self) -> &'static str {
        self.term_order
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }
}

pub fn normal_form(p: &Polynomial, gb: &StrongGroebnerBasis) -> Result<Polynomial, IdealError> {
    if p.ring() != &gb.ring {
        return Err(IdealError::Poly(PolyError::RingMismatch));
    }
    Ok(reduce(p, &gb.basis))
}

pub fn is_member(p: &Polynomial, gb: &StrongGroebnerBasis) -> Result<bool, IdealError> {
    Ok(normal_form(p, gb)?.is_zero())
}

/// An explicit cofactor identity `target = sum cofactor_i * generator_i`.
#[derive(Debug, Clone)]
pub struct MembershipCertificate {
    pub target: Polynomial,
    pub cofactors: Vec<Polynomial>,
}

impl MembershipCertificate {
    pub fn verify(&self, generators: &[Polynomial]) -> Result<bool, IdealError> {
        if generators.len() != self.cofactors.len() {
            return Err(IdealError::LengthMismatch);
        }
        let mut sum = Polynomial::zero(self.target.ring());
        for (c, g) in self.cofactors.iter().zip(generators) {
            sum = sum.add(&c.mul(g)?)?;
        }
        Ok(sum == self.target)
    }

    pub fn to_json(&self, generators: &[Polynomial]) -> CertificateJson {
        CertificateJson {
            target: self.target.to_string(),
            generators: generators.iter().map(|g| g.to_string()).collect(),
            cofactors: self.cofactors.iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateJson {
    pub target: String,
    pub generators: Vec<String>,
    pub cofactors: Vec<String>,
}

pub fn verify_certificate(
    cert: &MembershipCertificate,
    generators: &[Polynomial],
) -> Result<bool, IdealError> {
    cert.verify(generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::RingSpec;
    use num_bigint::BigInt;

    fn gb_of(ring: &Arc<RingSpec>, gens: Vec<Polynomial>) -> StrongGroebnerBasis {
        strong_groebner(&IdealZ::new(ring, gens).unwrap())
    }

    /// Independent oracle: is w in the row lattice of `rows`? Solved by
    /// integer elimination with gcd steps, no Groebner machinery involved.
    fn lattice_contains(rows: &[Vec<i64>], w: &[i64]) -> bool {
        let mut rows: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|x| *x as i128).collect())
            .collect();
        let mut w: Vec<i128> = w.iter().map(|x| *x as i128).collect();
        let cols = w.len();
        let mut pivot_row = 0;
        for col in 0..cols {
            loop {
                let mut idx = None;
                for (i, r) in rows.iter().enumerate().skip(pivot_row) {
                    if r[col] != 0 {
                        match idx {
                            None => idx = Some(i),
                            Some(j) if rows[j][col].abs() > r[col].abs() => idx = Some(i),
                            _ => {}
                        }
                    }
                }
                let Some(i) = idx else { break };
                rows.swap(pivot_row, i);
                let mut done = true;
                for i in pivot_row + 1..rows.len() {
                    let q = rows[i][col].div_euclid(rows[pivot_row][col]);
                    if q != 0 {
                        for k in 0..cols {
                            rows[i][k] -= q * rows[pivot_row][k];
                        }
                    }
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
                if done {
                    pivot_row += 1;
                    break;
                }
            }
        }
        // Back-substitute w against the echelon rows.
        for r in &rows {
            let Some(col) = r.iter().position(|x| *x != 0) else {
                continue;
            };
            if w[col] % r[col] == 0 {
                let q = w[col] / r[col];
                for k in 0..w.len() {
                    w[k] -= q * r[k];
                }
            }
        }
        w.iter().all(|x| *x == 0)
    }

    #[test]
    fn principal_ideal_2l() {
        let ring = RingSpec::l();
        let two_l = Polynomial::linear(&ring, &[2]);
        let gb = gb_of(&ring, vec![two_l.clone()]);
        assert_eq!(gb.basis(), &[two_l]);
    }

    #[test]
    fn degree_one_lattice_g3_odd_n2() {
        // ideal (-2l1 + 3l2, -2l1 - 3l2): normal form of 6l2 is 0, of l2 is l2.
        let ring = RingSpec::l1_l2();
        let r1 = Polynomial::linear(&ring, &[-2, 3]);
        let r2 = Polynomial::linear(&ring, &[-2, -3]);
        let gb = gb_of(&ring, vec![r1, r2]);
        let six_l2 = Polynomial::linear(&ring, &[0, 6]);
        let l2 = Polynomial::linear(&ring, &[0, 1]);
        assert!(normal_form(&six_l2, &gb).unwrap().is_zero());
        assert_eq!(normal_form(&l2, &gb).unwrap(), l2);
        // degree-1 membership agrees with the lattice oracle on a grid
        let rows = [vec![-2i64, 3], vec![-2, -3]];
        for a in -9i64..=9 {
            for b in -9i64..=9 {
                let v = Polynomial::linear(&ring, &[a, b]);
                assert_eq!(
                    normal_form(&v, &gb).unwrap().is_zero(),
                    lattice_contains(&rows, &[a, b]),
                    "disagreement at ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn order_4g_membership_g2() {
        // ideal ((g-1)l1 - (g+1)l2, 2(l1+l2)) at g=2: 8l2 in, 4l2 out.
        let ring = RingSpec::l1_l2();
        let gb = gb_of(
            &ring,
            vec![
                Polynomial::linear(&ring, &[1, -3]),
                Polynomial::linear(&ring, &[2, 2]),
            ],
        );
        assert!(normal_form(&Polynomial::linear(&ring, &[0, 8]), &gb)
            .unwrap()
            .is_zero());
        assert!(!normal_form(&Polynomial::linear(&ring, &[0, 4]), &gb)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn generators_annihilate() {
        let ring = RingSpec::tau_c2_c3();
        let tau = Polynomial::var(&ring, "tau").unwrap();
        let c2 = Polynomial::var(&ring, "c2").unwrap();
        let c3 = Polynomial::var(&ring, "c3").unwrap();
        // (2tau^2 - 24c2, 20tau, 2c3): the g=2 relations of the source ring.
        let gens = vec![
            tau.pow(2)
                .scale(&BigInt::from(2))
                .sub(&c2.scale(&BigInt::from(24)))
                .unwrap(),
            tau.scale(&BigInt::from(20)),
            c3.scale(&BigInt::from(2)),
        ];
        let gb = gb_of(&ring, gens.clone());
        for g in &gens {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_idempotent() {
        let ring = RingSpec::l1_l2();
        let gb = gb_of(
            &ring,
            vec![
                Polynomial::linear(&ring, &[12, 4]),
                Polynomial::linear(&ring, &[1, -3]),
            ],
        );
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let p = Polynomial::linear(&ring, &[a, b]);
                let nf = normal_form(&p, &gb).unwrap();
                assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
            }
        }
    }

    #[test]
    fn principal_divisibility() {
        // NF against (q) vanishes iff q divides, checked by exact division
        // for small-degree instances.
        let ring = RingSpec::l1_l2();
        let q = Polynomial::linear(&ring, &[2, -1]);
        let gb = gb_of(&ring, vec![q.clone()]);
        let l1 = Polynomial::var(&ring, "l1").unwrap();
        let l2 = Polynomial::var(&ring, "l2").unwrap();
        let multiple = q
            .mul(&l1.add(&l2.scale(&BigInt::from(5))).unwrap())
            .unwrap();
        assert!(normal_form(&multiple, &gb).unwrap().is_zero());
        let not_multiple = multiple.add(&l1.mul(&l2).unwrap()).unwrap();
        assert!(!normal_form(&not_multiple, &gb).unwrap().is_zero());
    }

    #[test]
    fn containment_monotone() {
        let ring = RingSpec::l1_l2();
        let g1 = Polynomial::linear(&ring, &[12, 4]);
        let g2 = Polynomial::linear(&ring, &[1, -3]);
        let small = gb_of(&ring, vec![g1.clone()]);
        let big = gb_of(&ring, vec![g1, g2]);
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let p = Polynomial::linear(&ring, &[a, b]);
                if normal_form(&p, &small).unwrap().is_zero() {
                    assert!(normal_form(&p, &big).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn certificate_f1_even_g2() {
        let ring = RingSpec::l1_l2();
        let gens = vec![
            Polynomial::linear(&ring, &[12, 4]),
            Polynomial::linear(&ring, &[1, -3]),
        ];
        let cert = MembershipCertificate {
            target: Polynomial::linear(&ring, &[10, 10]),
            cofactors: vec![
                Polynomial::constant(&ring, 1),
                Polynomial::constant(&ring, -2),
            ],
        };
        assert!(verify_certificate(&cert, &gens).unwrap());
    }

    #[test]
    fn certificate_zero_target() {
        let ring = RingSpec::l1_l2();
        let gens = vec![Polynomial::linear(&ring, &[1, 1])];
        let cert = MembershipCertificate {
            target: Polynomial::zero(&ring),
            cofactors: vec![Polynomial::zero(&ring)],
        };
        assert!(verify_certificate(&cert, &gens).unwrap());
    }

    #[test]
    fn certificate_length_mismatch() {
        let ring = RingSpec::l1_l2();
        let cert = MembershipCertificate {
            target: Polynomial::zero(&ring),
            cofactors: vec![],
        };
        assert_eq!(
            verify_certificate(&cert, &[Polynomial::linear(&ring, &[1, 0])]),
            Err(IdealError::LengthMismatch)
        );
    }

    #[test]
    fn deterministic_basis() {
        let ring = RingSpec::l1_l2();
        let gens = vec![
            Polynomial::linear(&ring, &[12, 4]),
            Polynomial::linear(&ring, &[1, -3]),
        ];
        let a = gb_of(&ring, gens.clone());
        let b = gb_of(&ring, gens);
        assert_eq!(a.basis(), b.basis());
    }
}
