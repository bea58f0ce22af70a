use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Display;

#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::dense::{RepMatrix, Scalar};
use crate::geometry::EulerAngles;
use crate::transforms::grid::SampleGrid;
use crate::wigner::block_offset;
use crate::{Error, Result};

fn check_order(l: usize, m: i64) {
    assert!(m.unsigned_abs() as usize <= l, "order {m} outside degree {l}");
}

/// Fourier coefficients `F^l_{m,n}` on SO(3) for `l < B`, with
///
/// `f(R) = Σ_{l<B} Σ_{m,n} (2l+1) F^l_{m,n} U^l_{m,n}(R)` (real, `T = f64`) or
/// the same with `D^l` (complex, `T = Complex64`).
///
/// Blocks are stored consecutively, each row-major in `(m, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SO3Coefficients<T> {
    bandwidth: usize,
    data: Vec<T>,
}

impl<T: Scalar> SO3Coefficients<T> {
    pub fn zeros(bandwidth: usize) -> Self {
        SO3Coefficients {
            bandwidth,
            data: vec![T::zero(); block_offset(bandwidth)],
        }
    }

    pub fn from_fn(bandwidth: usize, mut f: impl FnMut(usize, i64, i64) -> T) -> Self {
        let mut data = Vec::with_capacity(block_offset(bandwidth));
        for l in 0..bandwidth {
            let li = l as i64;
            for m in -li..=li {
                for n in -li..=li {
                    data.push(f(l, m, n));
                }
            }
        }
        SO3Coefficients { bandwidth, data }
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    #[inline]
    fn index(&self, l: usize, m: i64, n: i64) -> usize {
        assert!(l < self.bandwidth, "degree {l} outside bandwidth {}", self.bandwidth);
        check_order(l, m);
        check_order(l, n);
        let li = l as i64;
        block_offset(l) + ((m + li) * (2 * li + 1) + n + li) as usize
    }

    #[inline]
    pub fn get(&self, l: usize, m: i64, n: i64) -> T {
        self.data[self.index(l, m, n)]
    }

    #[inline]
    pub fn set(&mut self, l: usize, m: i64, n: i64, v: T) {
        let i = self.index(l, m, n);
        self.data[i] = v;
    }

    pub fn block(&self, l: usize) -> RepMatrix<T> {
        RepMatrix::from_fn(l, |m, n| self.get(l, m, n))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    /// `(l, m, n, value)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, i64, T)> + '_ {
        (0..self.bandwidth).flat_map(move |l| {
            let li = l as i64;
            (-li..=li).flat_map(move |m| (-li..=li).map(move |n| (l, m, n, self.get(l, m, n))))
        })
    }

    /// `Σ_l ‖F^l - G^l‖_F`.
    pub fn block_error(&self, other: &Self) -> Result<f64> {
        if self.bandwidth != other.bandwidth {
            return Err(Error::BandwidthMismatch {
                left: self.bandwidth,
                right: other.bandwidth,
            });
        }
        Ok((0..self.bandwidth)
            .map(|l| {
                let r = block_offset(l)..block_offset(l + 1);
                self.data[r.clone()]
                    .iter()
                    .zip(&other.data[r])
                    .map(|(a, b)| (*a - *b).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.bandwidth, other.bandwidth);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).modulus())
            .fold(0.0, f64::max)
    }
}

/// Coefficients `F^l_m` on S² for `l < B`, with `f(x) = Σ_{l<B} (F^l)ᵀ S^l(x)`.
/// Degree `l` starts at index `l²`.
#[derive(Debug, Clone, PartialEq)]
pub struct S2Coefficients<T> {
    bandwidth: usize,
    data: Vec<T>,
}

impl<T: Scalar> S2Coefficients<T> {
    pub fn zeros(bandwidth: usize) -> Self {
        S2Coefficients {
            bandwidth,
            data: vec![T::zero(); bandwidth * bandwidth],
        }
    }

    pub fn from_fn(bandwidth: usize, mut f: impl FnMut(usize, i64) -> T) -> Self {
        let mut data = Vec::with_capacity(bandwidth * bandwidth);
        for l in 0..bandwidth {
            let li = l as i64;
            for m in -li..=li {
                data.push(f(l, m));
            }
        }
        S2Coefficients { bandwidth, data }
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    #[inline]
    fn index(&self, l: usize, m: i64) -> usize {
        assert!(l < self.bandwidth, "degree {l} outside bandwidth {}", self.bandwidth);
        check_order(l, m);
        (l * l) + (l as i64 + m) as usize
    }

    #[inline]
    pub fn get(&self, l: usize, m: i64) -> T {
        self.data[self.index(l, m)]
    }

    #[inline]
    pub fn set(&mut self, l: usize, m: i64, v: T) {
        let i = self.index(l, m);
        self.data[i] = v;
    }

    /// `F^l` as a slice of length `2l+1`.
    pub fn degree(&self, l: usize) -> &[T] {
        assert!(l < self.bandwidth, "degree {l} outside bandwidth {}", self.bandwidth);
        &self.data[l * l..(l + 1) * (l + 1)]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, T)> + '_ {
        (0..self.bandwidth).flat_map(move |l| {
            let li = l as i64;
            (-li..=li).map(move |m| (l, m, self.get(l, m)))
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.bandwidth, other.bandwidth);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).modulus())
            .fold(0.0, f64::max)
    }

    /// Same coefficients truncated or zero-padded to another bandwidth.
    pub fn with_bandwidth(&self, bandwidth: usize) -> Self {
        S2Coefficients::from_fn(bandwidth, |l, m| if l < self.bandwidth { self.get(l, m) } else { T::zero() })
    }
}

/// Samples on the SO(3) grid, row-major in `(j₁, k, j₂)` for `(α, β, γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SO3Samples<T> {
    bandwidth: usize,
    data: Vec<T>,
}

impl<T: Scalar> SO3Samples<T> {
    pub fn new(bandwidth: usize, data: Vec<T>) -> Result<Self> {
        let n = 2 * bandwidth;
        if bandwidth == 0 {
            return Err(Error::InvalidBandwidth(bandwidth));
        }
        if data.len() != n * n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n * n,
                found: data.len(),
            });
        }
        Ok(SO3Samples { bandwidth, data })
    }

    /// Evaluates an infallible function on the grid.
    pub fn from_fn(grid: &SampleGrid, mut f: impl FnMut(&EulerAngles) -> T) -> Self {
        let n = grid.size();
        let mut data = Vec::with_capacity(n * n * n);
        for j1 in 0..n {
            for k in 0..n {
                for j2 in 0..n {
                    data.push(f(&grid.euler(j1, k, j2)));
                }
            }
        }
        SO3Samples {
            bandwidth: grid.bandwidth(),
            data,
        }
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    /// Nodes per axis, `2B`.
    pub fn size(&self) -> usize {
        2 * self.bandwidth
    }

    #[inline]
    pub fn get(&self, j1: usize, k: usize, j2: usize) -> T {
        let n = self.size();
        self.data[(j1 * n + k) * n + j2]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.bandwidth, other.bandwidth);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).modulus())
            .fold(0.0, f64::max)
    }
}

/// Evaluates `f` at every grid rotation. The first failure is returned with
/// its grid index.
pub fn sample_function<T, E, F>(grid: &SampleGrid, mut f: F) -> Result<SO3Samples<T>>
where
    T: Scalar,
    E: Display,
    F: FnMut(&EulerAngles) -> core::result::Result<T, E>,
{
    let n = grid.size();
    let mut data = Vec::with_capacity(n * n * n);
    for j1 in 0..n {
        for k in 0..n {
            for j2 in 0..n {
                let v = f(&grid.euler(j1, k, j2)).map_err(|e| Error::Sampling {
                    j1,
                    k,
                    j2,
                    reason: format!("{e}"),
                })?;
                data.push(v);
            }
        }
    }
    Ok(SO3Samples {
        bandwidth: grid.bandwidth(),
        data,
    })
}

/// Samples on the S² grid, row-major in `(k, j)` for `(θ_k, φ_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct S2Samples<T> {
    bandwidth: usize,
    data: Vec<T>,
}

impl<T: Scalar> S2Samples<T> {
    pub fn new(bandwidth: usize, data: Vec<T>) -> Result<Self> {
        let n = 2 * bandwidth;
        if bandwidth == 0 {
            return Err(Error::InvalidBandwidth(bandwidth));
        }
        if data.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(S2Samples { bandwidth, data })
    }

    /// Evaluates `f(θ, φ)` on the grid.
    pub fn from_fn(grid: &SampleGrid, mut f: impl FnMut(f64, f64) -> T) -> Self {
        let mut data = Vec::with_capacity(grid.size() * grid.size());
        for &theta in grid.beta() {
            for &phi in grid.alpha() {
                data.push(f(theta, phi));
            }
        }
        S2Samples {
            bandwidth: grid.bandwidth(),
            data,
        }
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn size(&self) -> usize {
        2 * self.bandwidth
    }

    #[inline]
    pub fn get(&self, k: usize, j: usize) -> T {
        self.data[k * self.size() + j]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.bandwidth, other.bandwidth);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).modulus())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::make_grid;
    use alloc::string::ToString;

    #[test]
    fn layouts() {
        let c = SO3Coefficients::from_fn(3, |l, m, n| (100 * l) as f64 + (10 * (m + 5)) as f64 + (n + 5) as f64);
        assert_eq!(c.as_slice().len(), 1 + 9 + 25);
        assert_eq!(c.get(2, -1, 2), 200.0 + 40.0 + 7.0);
        assert_eq!(c.iter().count(), 35);
        assert_eq!(c.block(1).get(1, -1), 100.0 + 60.0 + 4.0);
        let s = S2Coefficients::from_fn(4, |l, m| (10 * l) as f64 + m as f64);
        assert_eq!(s.get(3, -2), 28.0);
        assert_eq!(s.degree(2), &[18.0, 19.0, 20.0, 21.0, 22.0]);
        assert_eq!(s.with_bandwidth(2).as_slice().len(), 4);
    }

    #[test]
    fn sampling() {
        let g = make_grid(2).unwrap();
        let s = SO3Samples::from_fn(&g, |_| 1.0);
        assert!(s.as_slice().iter().all(|&v| v == 1.0));
        let t = SO3Samples::from_fn(&g, |e| e.alpha() + 10.0 * e.beta() + 100.0 * e.gamma());
        let (a, b) = (g.alpha(), g.beta());
        assert_eq!(t.get(1, 2, 3), a[1] + 10.0 * b[2] + 100.0 * a[3]);
        let err = sample_function(&g, |e| if e.beta() > 2.0 { Err("boom") } else { Ok(0.0) }).unwrap_err();
        assert!(matches!(err, Error::Sampling { j1: 0, k: 3, j2: 0, .. }));
        assert!(err.to_string().contains("boom"));
        assert!(SO3Samples::new(2, vec![0.0; 10]).is_err());
    }
}
