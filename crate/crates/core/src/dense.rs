//! Minimal dense matrices over `f64` and `Complex64`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

/// Field element used by representation matrices and coefficient sets.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + Send
    + Sync
    + 'static
{
    fn conj(self) -> Self;
    fn modulus(self) -> f64;
    fn from_real(x: f64) -> Self;
    fn norm_sqr(self) -> f64 {
        let m = self.modulus();
        m * m
    }
}

impl Scalar for f64 {
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn modulus(self) -> f64 {
        libm::fabs(self)
    }
    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        self * self
    }
}

impl Scalar for Complex64 {
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn modulus(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
    #[inline]
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn conj(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.conj()).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == T::zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = *d + a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        Self::from_fn(r, c, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols) * rhs.get(i % rhs.rows, j % rhs.cols)
        })
    }

    /// Block-diagonal matrix from square blocks.
    pub fn direct_sum<'a>(blocks: impl IntoIterator<Item = &'a Self>) -> Self {
        let blocks: Vec<&Self> = blocks.into_iter().collect();
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(n, n);
        let mut at = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(at + i, at + j, b.get(i, j));
                }
            }
            at += b.rows;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a - b).modulus())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x.norm_sqr()).sum())
    }
}

impl Matrix<Complex64> {
    pub fn from_real(m: &Matrix<f64>) -> Self {
        Matrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    /// Largest imaginary part in absolute value.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| libm::fabs(z.im)).fold(0.0, f64::max)
    }

    pub fn real_part(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.re).collect(),
        }
    }
}

/// A `(2l+1)×(2l+1)` representation matrix indexed by orders `m, n ∈ [-l, l]`
/// (row `m`, column `n`, both ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrix<T> {
    degree: usize,
    matrix: Matrix<T>,
}

impl<T: Scalar> RepMatrix<T> {
    pub fn zeros(degree: usize) -> Self {
        let w = 2 * degree + 1;
        RepMatrix {
            degree,
            matrix: Matrix::zeros(w, w),
        }
    }

    pub fn identity(degree: usize) -> Self {
        RepMatrix {
            degree,
            matrix: Matrix::identity(2 * degree + 1),
        }
    }

    pub fn from_matrix(degree: usize, matrix: Matrix<T>) -> Self {
        assert_eq!(matrix.rows(), 2 * degree + 1);
        assert_eq!(matrix.cols(), 2 * degree + 1);
        RepMatrix { degree, matrix }
    }

    pub fn from_fn(degree: usize, mut f: impl FnMut(i64, i64) -> T) -> Self {
        let l = degree as i64;
        let w = 2 * degree + 1;
        RepMatrix {
            degree,
            matrix: Matrix::from_fn(w, w, |i, j| f(i as i64 - l, j as i64 - l)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        2 * self.degree + 1
    }

    #[inline]
    pub fn get(&self, m: i64, n: i64) -> T {
        let l = self.degree as i64;
        self.matrix.get((m + l) as usize, (n + l) as usize)
    }

    #[inline]
    pub fn set(&mut self, m: i64, n: i64, v: T) {
        let l = self.degree as i64;
        self.matrix.set((m + l) as usize, (n + l) as usize, v);
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree);
        RepMatrix {
            degree: self.degree,
            matrix: self.matrix.matmul(&rhs.matrix),
        }
    }

    pub fn transpose(&self) -> Self {
        RepMatrix {
            degree: self.degree,
            matrix: self.matrix.transpose(),
        }
    }

    pub fn adjoint(&self) -> Self {
        RepMatrix {
            degree: self.degree,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.matrix.max_abs_diff(&rhs.matrix)
    }

    /// Max-abs entry of `A A* - I`.
    pub fn unitarity_defect(&self) -> f64 {
        self.matrix
            .matmul(&self.matrix.adjoint())
            .max_abs_diff(&Matrix::identity(self.dim()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_and_direct_sum_shapes() {
        let a = Matrix::<f64>::from_fn(2, 2, |i, j| (i * 2 + j) as f64);
        let b = Matrix::<f64>::identity(3);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k.get(4, 1), 2.0);
        assert_eq!(k.get(4, 4), 3.0);
        let s = Matrix::direct_sum([&a, &b]);
        assert_eq!(s.rows(), 5);
        assert_eq!(s.get(1, 0), 2.0);
        assert_eq!(s.get(4, 4), 1.0);
        assert_eq!(s.get(0, 4), 0.0);
    }

    #[test]
    fn signed_indexing() {
        let r = RepMatrix::<f64>::from_fn(2, |m, n| (10 * m + n) as f64);
        assert_eq!(r.get(-2, 1), -19.0);
        assert_eq!(r.matrix().get(0, 3), -19.0);
        assert_eq!(r.transpose().get(1, -2), -19.0);
    }
}
