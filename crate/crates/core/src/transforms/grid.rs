use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::EulerAngles;
use crate::wigner::DegreeRecursion;
use crate::{Error, Result};

/// Equiangular sampling grid of bandwidth `B`:
/// `α_j = γ_j = πj/B`, `β_k = π(2k+1)/(4B)` for `j, k < 2B`, with
///
/// `w_k = (1/(4B³)) sin β_k Σ_{j<B} sin((2j+1)β_k)/(2j+1)`.
///
/// Band-limited functions are integrated exactly: `Σ_k w_k d^l_{0,0}(β_k) =
/// δ_{l,0}/(4B²)` for every `l < 2B`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    bandwidth: usize,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    weights: Vec<f64>,
}

impl SampleGrid {
    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    /// Number of nodes per axis, `2B`.
    pub fn size(&self) -> usize {
        2 * self.bandwidth
    }

    /// `α_j` (also `γ_j` and the S² longitudes `φ_j`).
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn gamma(&self) -> &[f64] {
        &self.alpha
    }

    /// `β_k` (also the S² co-latitudes `θ_k`).
    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn euler(&self, j1: usize, k: usize, j2: usize) -> EulerAngles {
        EulerAngles::new(self.alpha[j1], self.beta[k], self.alpha[j2]).expect("grid angles are in range")
    }

    /// `Σ_k w_k d^l_{0,0}(β_k)` for `l = 0..=max_degree`.
    pub fn weighted_legendre_sums(&self, max_degree: usize) -> Vec<f64> {
        let mut rec = DegreeRecursion::new(0, 0, &self.beta);
        let mut sums = Vec::with_capacity(max_degree + 1);
        for l in 0..=max_degree {
            sums.push(rec.values().iter().zip(&self.weights).map(|(d, w)| d * w).sum());
            if l < max_degree {
                rec.advance();
            }
        }
        sums
    }
}

pub fn make_grid(bandwidth: usize) -> Result<SampleGrid> {
    if bandwidth == 0 {
        return Err(Error::InvalidBandwidth(bandwidth));
    }
    let b = bandwidth as f64;
    let n = 2 * bandwidth;
    let alpha = (0..n).map(|j| PI * j as f64 / b).collect();
    let beta: Vec<f64> = (0..n).map(|k| PI * (2 * k + 1) as f64 / (4.0 * b)).collect();
    let weights = beta
        .iter()
        .map(|&bk| {
            let series: f64 = (0..bandwidth)
                .map(|j| {
                    let odd = (2 * j + 1) as f64;
                    (odd * bk).sin() / odd
                })
                .sum();
            bk.sin() * series / (4.0 * b * b * b)
        })
        .collect();
    let grid = SampleGrid {
        bandwidth,
        alpha,
        beta,
        weights,
    };
    #[cfg(debug_assertions)]
    {
        let target = 1.0 / (4.0 * b * b);
        for (l, s) in grid.weighted_legendre_sums(n - 1).iter().enumerate() {
            let expect = if l == 0 { target } else { 0.0 };
            debug_assert!((s - expect).abs() < 1e-12 * target.max(1e-3), "weight identity fails at l={l}");
        }
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_grid() {
        let g = make_grid(1).unwrap();
        assert_eq!(g.alpha(), &[0.0, PI]);
        assert!((g.beta()[0] - PI / 4.0).abs() < 1e-16);
        assert!((g.beta()[1] - 3.0 * PI / 4.0).abs() < 1e-16);
        assert!(make_grid(0).is_err());
    }

    #[test]
    fn weight_identity() {
        for b in [1usize, 2, 4, 7, 16, 33] {
            let g = make_grid(b).unwrap();
            assert!(g.weights().iter().all(|&w| w > 0.0));
            let target = 1.0 / (4.0 * (b * b) as f64);
            let sums = g.weighted_legendre_sums(2 * b - 1);
            assert!((sums[0] - target).abs() < 1e-15);
            for s in &sums[1..] {
                assert!(s.abs() < 1e-14, "B={b}");
            }
        }
    }
}
