//! Dense square-or-rectangular matrices over `LaurentPoly`.
//!
//! Entry `(r, c)` is the coefficient of basis vector `r` in the image of basis
//! vector `c`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::qlaurent::LaurentPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| LaurentPoly::one()).collect())
    }

    pub fn diagonal(entries: Vec<LaurentPoly>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (k, e) in entries.into_iter().enumerate() {
            m.set(k, k, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Kronecker product `self (x) other` on the basis `e_a (x) f_b -> a * other.rows + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, v1) in self.nonzero() {
            for (r2, c2, v2) in other.nonzero() {
                out.set(r1 * other.rows + r2, c1 * other.cols + c2, v1 * v2);
            }
        }
        out
    }

    pub fn apply(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![LaurentPoly::zero(); self.rows];
        for (r, c, x) in self.nonzero() {
            if !v[c].is_zero() {
                out[r] += &(x * &v[c]);
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for (r, k, a) in self.nonzero() {
            for c in 0..rhs.cols {
                let b = rhs.get(k, c);
                if !b.is_zero() {
                    let idx = r * out.cols + c;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (r, c, v) in self.nonzero() {
            writeln!(f, "  ({r},{c}) = {v}")?;
        }
        write!(f, "]")
    }
}
