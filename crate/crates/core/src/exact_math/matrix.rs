use std::fmt;
use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// # Panics
    /// If the rows are ragged or empty.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Self::new(r, c, entries).expect("nonempty rectangular rows")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, BigInt::from(x));
        }
        m
    }

    /// Companion matrix of a monic polynomial; its characteristic polynomial
    /// is the polynomial itself.
    pub fn companion(f: &IntPolynomial) -> Result<Self> {
        let n = match f.degree() {
            Some(n) if n >= 1 && f.is_monic() => n,
            _ => {
                return Err(Error::InvalidArgument(
                    "companion matrix needs a monic polynomial of positive degree".into(),
                ))
            }
        };
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, BigInt::one());
        }
        for i in 0..n {
            m.set(i, n - 1, -f.coeff(i));
        }
        Ok(m)
    }

    pub fn block_diagonal(blocks: &[IntMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let k: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(n, k);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(s) = (k + 1..n).find(|&s| !a[s][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Characteristic polynomial `det(xI - A)` by Faddeev–LeVerrier; every
    /// division is exact over the integers.
    pub fn characteristic_polynomial(&self) -> IntPolynomial {
        assert!(self.is_square());
        let n = self.rows;
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                let v = next.get(i, i) + &c[n - k + 1];
                next.set(i, i, v);
            }
            m = next;
            let t = (self * &m).trace();
            c[n - k] = -t / BigInt::from(k);
        }
        IntPolynomial::new(c)
    }

    /// Smith normal form with transforms: `u * self * v = diag(factors)`.
    pub fn smith_normal_form(&self) -> SmithForm {
        smith(self)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Result of a Smith normal form computation.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular row transform.
    pub u: IntMatrix,
    /// Unimodular column transform.
    pub v: IntMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    /// Invariant factors padded with zeros to `min(rows, cols)` entries.
    pub fn padded_factors(&self) -> Vec<BigInt> {
        let mut f = self.factors.clone();
        f.resize(self.rows.min(self.cols), BigInt::zero());
        f
    }

    /// Order of the torsion of the cokernel.
    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn kernel_rank(&self) -> usize {
        self.cols - self.rank
    }

    /// A basis of the kernel: the trailing columns of `v`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.cols).map(|j| self.v.column(j)).collect()
    }
}

/// Free-functional form of [`IntMatrix::smith_normal_form`]:
/// `(factors padded with zeros, rank)`.
pub fn smith_normal_form(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    let s = m.smith_normal_form();
    (s.padded_factors(), s.rank)
}

fn smith(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                let (pi, pj) = min_abs_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let pivot = a.get(t, t).clone();
            let bad = (t + 1..r)
                .find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let factors = (0..t).map(|i| a.get(i, i).clone()).collect();
    SmithForm {
        factors,
        rank: t,
        u,
        v,
        rows: r,
        cols: c,
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = a.get(i, j);
        if !x.is_zero() && (a.get(best.0, best.1).is_zero() || x.abs() < a.get(best.0, best.1).abs()) {
            *best = (i, j);
        }
    };
    for i in t + 1..a.rows {
        consider(i, t, &mut best);
    }
    for j in t + 1..a.cols {
        consider(t, j, &mut best);
    }
    best
}
