//! Small dense matrices over a [`Scalar`], used for completions and
//! certificates. Eigenvalues go through `nalgebra` in `f64`.

use nalgebra::DMatrix;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(DenseMatrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() })
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

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v.clone() * s.clone()).collect() }
    }

    /// `v v^T` for a column vector `v`.
    pub fn outer(v: &[S]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i].clone() * v[j].clone())
    }

    pub fn max_abs(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, v| S::max_of(acc, v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> S {
        self.sub(other).max_abs()
    }

    pub fn asymmetry(&self) -> S {
        self.max_abs_diff(&self.transpose())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Gauss-Jordan elimination with the pivot of largest magnitude.
    /// Returns `(inverse, determinant)`.
    fn gauss_jordan(&self) -> Result<(Self, S)> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&p, &q| a[(p, col)].abs().partial_cmp(&a[(q, col)].abs()).unwrap_or(std::cmp::Ordering::Equal))
                .expect("nonempty range");
            if a[(pivot, col)].is_zero() {
                return Err(Error::Singular);
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det * p.clone();
            let pinv = S::one() / p;
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() * pinv.clone();
                inv[(col, j)] = inv[(col, j)].clone() * pinv.clone();
            }
            for row in 0..n {
                if row == col || a[(row, col)].is_zero() {
                    continue;
                }
                let f = a[(row, col)].clone();
                for j in 0..n {
                    a[(row, j)] = a[(row, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(row, j)] = inv[(row, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok((inv, det))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(self.gauss_jordan()?.0)
    }

    pub fn determinant(&self) -> Result<S> {
        match self.gauss_jordan() {
            Ok((_, d)) => Ok(d),
            Err(Error::Singular) => Ok(S::zero()),
            Err(e) => Err(e),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_f64(&self) -> DenseMatrix<f64> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v.to_f64_lossy()).collect() }
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64_lossy())
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        let m = self.to_nalgebra();
        let sym = (&m + m.transpose()) * 0.5;
        let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Number of eigenvalues above `tol * max(1, max |λ|)`.
    pub fn numerical_rank(&self, tol: f64) -> usize {
        let ev = self.symmetric_eigenvalues();
        let scale = ev.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        ev.iter().filter(|&&v| v > tol * scale).count()
    }

    /// Smallest eigenvalue is at least `-tol * max(1, max |λ|)`.
    pub fn is_psd(&self, tol: f64) -> bool {
        let ev = self.symmetric_eigenvalues();
        let scale = ev.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        ev.first().is_none_or(|&v| v >= -tol * scale)
    }

    /// Row-major nested arrays.
    pub fn to_json(&self) -> Value {
        Value::Array((0..self.rows).map(|i| Value::Array((0..self.cols).map(|j| self[(i, j)].to_json()).collect())).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let parsed: Vec<Vec<S>> = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(|v| S::from_json(v).ok_or_else(|| Error::Parse(format!("bad number {v}"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&parsed)
    }
}

impl<S> std::ops::Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn exact_inverse_and_determinant() {
        let q = |n, d| Rational::from_ratio(n, d);
        let m = DenseMatrix::from_rows(&[vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), DenseMatrix::identity(2));
        assert_eq!(m.determinant().unwrap(), q(1, 1));
        let singular = DenseMatrix::from_rows(&[vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]).unwrap();
        assert_eq!(singular.inverse(), Err(Error::Singular));
        assert_eq!(singular.determinant().unwrap(), q(0, 1));
    }

    #[test]
    fn eigen_rank() {
        let v = [1.0, 1.0, 1.0];
        let m = DenseMatrix::outer(&v);
        assert_eq!(m.numerical_rank(1e-9), 1);
        assert!(m.is_psd(1e-12));
        assert!(!m.scale(&-1.0).is_psd(1e-12));
    }
}
