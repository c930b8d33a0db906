//! Integer matrices, Smith normal form, and finitely generated abelian
//! quotients of character lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LatticeError {
    #[error("matrix data length does not match dimensions")]
    BadShape,
    #[error("relations do not span a finite-index sublattice")]
    InfiniteQuotient,
    #[error("element_order rejects the zero vector")]
    ZeroVector,
    #[error("vector dimension does not match matrix columns")]
    DimensionMismatch,
}

/// A dense exact integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<IntegerMatrix, LatticeError> {
        if data.len() != rows * cols {
            return Err(LatticeError::BadShape);
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntegerMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|x| BigInt::from(*x)))
            .collect();
        IntegerMatrix::new(r, c, data).unwrap()
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<IntegerMatrix, LatticeError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LatticeError::BadShape);
        }
        IntegerMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix {
            rows: n,
            cols: n,
            data: vec![BigInt::zero(); n * n],
        };
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            data: vec![BigInt::zero(); self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free expansion; used for unimodularity checks.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        // Bareiss elimination.
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let swap = (k + 1..n).find(|i| !m[i * n + k].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j]) / &prev;
                    m[i * n + j] = v;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        sign * m[n * n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// U * A * V = D with U, V unimodular and D diagonal with a divisibility
/// chain of non-negative entries.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

/// Pivot: minimal absolute value among nonzero entries of the trailing
/// submatrix, ties broken by row-major position.
fn find_pivot(d: &IntegerMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..d.rows() {
        for j in from..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) if v.abs() < d.get(bi, bj).abs() => best = Some((i, j)),
                _ => {}
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SnfDecomposition {
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(a.rows());
    let mut v = IntegerMatrix::identity(a.cols());
    let n = a.rows().min(a.cols());
    for t in 0..n {
        'pivot: loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                break 'pivot;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // Clear column t below and row t to the right of the pivot.
            let mut clean = true;
            for i in t + 1..d.rows() {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..d.cols() {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Enforce the divisibility chain: fold in any entry the pivot
            // does not divide and restart this step.
            let p = d.get(t, t).clone();
            for i in t + 1..d.rows() {
                for j in t + 1..d.cols() {
                    if !(d.get(i, j) % &p).is_zero() {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }
    for t in 0..n {
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfDecomposition { u, d, v }
}

/// Structure of Z^cols / rowspan(relations), reported as the diagonal
/// invariant factors. Errors when the quotient is infinite.
pub fn quotient_structure(relations: &IntegerMatrix) -> Result<Vec<BigInt>, LatticeError> {
    let snf = smith_normal_form(relations);
    let mut factors = Vec::with_capacity(relations.cols());
    for j in 0..relations.cols() {
        if j >= relations.rows() {
            return Err(LatticeError::InfiniteQuotient);
        }
        let dj = snf.d.get(j, j);
        if dj.is_zero() {
            return Err(LatticeError::InfiniteQuotient);
        }
        factors.push(dj.clone());
    }
    Ok(factors)
}

pub fn group_order(invariant_factors: &[BigInt]) -> BigInt {
    invariant_factors.iter().product()
}

/// Least a >= 1 with a*v in the row lattice of `relations`, via the SNF
/// change of basis.
pub fn element_order(v: &[BigInt], relations: &IntegerMatrix) -> Result<BigInt, LatticeError> {
    if v.len() != relations.cols() {
        return Err(LatticeError::DimensionMismatch);
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(LatticeError::ZeroVector);
    }
    let snf = smith_normal_form(relations);
    // w = v * V; a*v in rowspan(A) iff a*w in rowspan(D).
    let mut w = vec![BigInt::zero(); relations.cols()];
    for (j, wj) in w.iter_mut().enumerate() {
        for (k, vk) in v.iter().enumerate() {
            *wj += vk * snf.v.get(k, j);
        }
    }
    let mut order = BigInt::one();
    for (j, wj) in w.iter().enumerate() {
        let dj = if j < relations.rows() {
            snf.d.get(j, j).clone()
        } else {
            BigInt::zero()
        };
        if dj.is_zero() {
            if !wj.is_zero() {
                return Err(LatticeError::InfiniteQuotient);
            }
            continue;
        }
        if wj.is_zero() {
            continue;
        }
        let step = &dj / dj.gcd(wj);
        order = order.lcm(&step);
    }
    Ok(order)
}

/// Invariant factors, chosen generator, and its order in the quotient.
#[derive(Debug, Clone)]
pub struct PicardGroup {
    pub invariant_factors: Vec<BigInt>,
    pub generator: Vec<BigInt>,
    pub generator_order: BigInt,
}

impl PicardGroup {
    /// Builds the quotient structure and reports the order of the supplied
    /// generator candidate. A zero vector is only accepted for the trivial
    /// group, where its order is 1.
    pub fn compute(
        relations: &IntegerMatrix,
        generator: Vec<BigInt>,
    ) -> Result<PicardGroup, LatticeError> {
        let invariant_factors = quotient_structure(relations)?;
        let order = group_order(&invariant_factors);
        let generator_order = if generator.iter().all(|x| x.is_zero()) || order.is_one() {
            BigInt::one()
        } else {
            element_order(&generator, relations)?
        };
        Ok(PicardGroup {
            invariant_factors,
            generator,
            generator_order,
        })
    }

    pub fn order(&self) -> BigInt {
        group_order(&self.invariant_factors)
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors
            .iter()
            .filter(|f| !f.is_one())
            .count()
            <= 1
    }

    pub fn generates(&self) -> bool {
        self.generator_order == self.order()
    }
}
