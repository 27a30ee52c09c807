//! Dense arbitrary-precision integer and rational matrices.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A vector in the lattice Z^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = LatticeVector::zero(dim);
        v.0[k] = BigInt::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn max_norm(&self) -> BigInt {
        self.0
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add_assign(&mut self, other: &LatticeVector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::from_rows(&big)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = BigInt::from(e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim());
        LatticeVector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(&v.0)
                        .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn pow(&self, exponent: u32) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = IntMatrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, range.len());
        for r in 0..self.rows {
            for (j, c) in range.clone().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.rows) && self.rows == self.cols
    }

    /// Fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
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

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            n: {
                assert_eq!(self.rows, self.cols);
                self.rows
            },
            data: self
                .data
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }

    // column operations used by the Hermite reduction

    pub(crate) fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let idx = r * self.cols + c;
            self.data[idx] = -&self.data[idx];
        }
    }

    /// `col[dst] -= q · col[src]`
    pub(crate) fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = q * &self.data[r * self.cols + src];
            self.data[r * self.cols + dst] -= v;
        }
    }

    /// Replaces columns `(p, q)` by `(a·p + b·q, c·p + d·q)`.
    pub(crate) fn combine_cols(
        &mut self,
        p: usize,
        q: usize,
        a: &BigInt,
        b: &BigInt,
        c: &BigInt,
        d: &BigInt,
    ) {
        for r in 0..self.rows {
            let x = self.data[r * self.cols + p].clone();
            let y = self.data[r * self.cols + q].clone();
            self.data[r * self.cols + p] = a * &x + b * &y;
            self.data[r * self.cols + q] = c * &x + d * &y;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Square matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigRational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigRational::one();
        }
        RatMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.n + c]
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        RatMatrix { n, data }
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(BigRational::zero(), |acc, j| acc + self.get(i, j) * &v[j])
            })
            .collect()
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = RatMatrix::identity(n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] = &a[col * n + j] / &p;
                inv[col * n + j] = &inv[col * n + j] / &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let x = &f * &a[col * n + j];
                    a[r * n + j] -= x;
                    let y = &f * &inv[col * n + j];
                    inv[r * n + j] -= y;
                }
            }
        }
        Some(RatMatrix { n, data: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(5));
        let m = IntMatrix::from_i64_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 4]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(-4));
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn rational_inverse() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        let inv = m.to_rational().inverse().unwrap();
        assert_eq!(m.to_rational().mul(&inv), RatMatrix::identity(2));
    }

    #[test]
    fn power_matches_repeated_product() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        let p = m.pow(10);
        assert_eq!(p.get(0, 0), &BigInt::from(89));
    }
}
