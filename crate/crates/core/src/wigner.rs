//! Wigner d-matrices `d^l_{m,n}(β)` for integer degrees.
//!
//! Entries are produced by the three-term recursion in the degree `l` for
//! fixed orders `(m, n)`:
//!
//! ```text
//! d^{l+1}_{mn} = (l+1)(2l+1) / sqrt(((l+1)²-m²)((l+1)²-n²))
//!              · [ (cos β - mn/(l(l+1))) d^l_{mn}
//!                  - sqrt((l²-m²)(l²-n²)) / (l(2l+1)) d^{l-1}_{mn} ]
//! ```
//!
//! seeded at `l = max(|m|, |n|)` by the closed-form edge entries, which are
//! evaluated in log space so that degrees in the hundreds neither overflow nor
//! lose the tiny values near the poles. Matrices are stored row-major with the
//! row index `m` and column index `n` both ascending from `-l`.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::check_polar;
use crate::special::{ln_factorial, parity, scaled_powers};
use crate::{Error, Result};

/// Number of entries in all blocks of degree `< l`: `Σ_{j<l} (2j+1)²`.
#[inline]
pub(crate) fn block_offset(l: usize) -> usize {
    (4 * l * l * l - l) / 3
}

/// Closed-form `d^l_{m,n}(β)` for an edge entry (`max(|m|, |n|) = l`).
pub(crate) fn edge_entry(l: i64, m: i64, n: i64, cos_half: f64, sin_half: f64) -> f64 {
    debug_assert!(m.abs().max(n.abs()) == l);
    let half_log_binom = |k: i64| 0.5 * (ln_factorial(2 * l) - ln_factorial(k) - ln_factorial(2 * l - k));
    if n == l {
        scaled_powers(half_log_binom(l + m), &[(cos_half, l + m), (sin_half, l - m)])
    } else if m == l {
        parity(l - n) * scaled_powers(half_log_binom(l + n), &[(cos_half, l + n), (sin_half, l - n)])
    } else if m == -l {
        scaled_powers(half_log_binom(l + n), &[(cos_half, l - n), (sin_half, l + n)])
    } else {
        // n == -l
        parity(m + l) * scaled_powers(half_log_binom(l - m), &[(cos_half, l - m), (sin_half, l + m)])
    }
}

/// Coefficients `(a, b, c)` of `d^{l+1} = a (cos β - b) d^l - c d^{l-1}` for
/// orders `(m, n)` with `max(|m|, |n|) ≤ l`.
#[inline]
pub(crate) fn step_coefficients(l: i64, m: i64, n: i64) -> (f64, f64, f64) {
    if l == 0 {
        return (1.0, 0.0, 0.0);
    }
    let (lf, mf, nf) = (l as f64, m as f64, n as f64);
    let lp = lf + 1.0;
    let a = lp * (2.0 * lf + 1.0) / ((lp * lp - mf * mf) * (lp * lp - nf * nf)).sqrt();
    let b = mf * nf / (lf * lp);
    let c = ((lf * lf - mf * mf) * (lf * lf - nf * nf)).sqrt() / (lf * (2.0 * lf + 1.0));
    (a, b, c)
}

/// All Wigner d-matrices `d^l(β)` for `0 ≤ l < B` at one angle.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerDStack {
    bandwidth: usize,
    beta: f64,
    data: Vec<f64>,
}

impl WignerDStack {
    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Row-major `(2l+1)×(2l+1)` block of degree `l`.
    pub fn block(&self, l: usize) -> &[f64] {
        let start = block_offset(l);
        &self.data[start..start + (2 * l + 1) * (2 * l + 1)]
    }

    /// `d^l_{m,n}(β)`; panics if the indices are out of range.
    #[inline]
    pub fn get(&self, l: usize, m: i64, n: i64) -> f64 {
        let li = l as i64;
        debug_assert!(m.abs() <= li && n.abs() <= li);
        let w = 2 * l + 1;
        self.data[block_offset(l) + (m + li) as usize * w + (n + li) as usize]
    }
}

/// Evaluates `d^l(β)` for every `l < bandwidth`.
pub fn wigner_d_stack(bandwidth: usize, beta: f64) -> Result<WignerDStack> {
    if bandwidth == 0 {
        return Err(Error::InvalidBandwidth(bandwidth));
    }
    let beta = check_polar("beta", beta)?;
    let (sin_half, cos_half) = (beta / 2.0).sin_cos();
    let cos_beta = beta.cos();
    let mut data = vec![0.0; block_offset(bandwidth)];
    if beta == 0.0 {
        for l in 0..bandwidth {
            let w = 2 * l + 1;
            for i in 0..w {
                data[block_offset(l) + i * w + i] = 1.0;
            }
        }
        return Ok(WignerDStack {
            bandwidth,
            beta,
            data,
        });
    }

    for l in 0..bandwidth as i64 {
        let w = (2 * l + 1) as usize;
        let here = block_offset(l as usize);
        for m in -l..=l {
            for n in -l..=l {
                let idx = here + (m + l) as usize * w + (n + l) as usize;
                data[idx] = if m.abs() == l || n.abs() == l {
                    edge_entry(l, m, n, cos_half, sin_half)
                } else {
                    // l ≥ 1 here; step from degree l-1
                    let lp = l - 1;
                    let wp = (2 * lp + 1) as usize;
                    let prev = data[block_offset(lp as usize) + (m + lp) as usize * wp + (n + lp) as usize];
                    let (a, b, c) = step_coefficients(lp, m, n);
                    let older = if m.abs().max(n.abs()) < lp {
                        let lpp = lp - 1;
                        let wpp = (2 * lpp + 1) as usize;
                        data[block_offset(lpp as usize) + (m + lpp) as usize * wpp + (n + lpp) as usize]
                    } else {
                        0.0
                    };
                    a * ((cos_beta - b) * prev - c * older)
                };
            }
        }
    }

    Ok(WignerDStack {
        bandwidth,
        beta,
        data,
    })
}

/// Single entry `d^l_{m,n}(β)`, computed by the same recursion along `l`.
pub fn wigner_d_entry(l: usize, m: i64, n: i64, beta: f64) -> Result<f64> {
    let li = l as i64;
    for (what, idx) in [("m", m), ("n", n)] {
        if idx.abs() > li {
            return Err(Error::IndexOutOfRange {
                what,
                index: idx,
                bound: li,
            });
        }
    }
    let beta = check_polar("beta", beta)?;
    if beta == 0.0 {
        return Ok(if m == n { 1.0 } else { 0.0 });
    }
    let mut column = DegreeRecursion::new(m, n, &[beta]);
    while column.degree() < l {
        column.advance();
    }
    Ok(column.values()[0])
}

/// Runs the degree recursion for fixed orders `(m, n)` at many angles at once,
/// starting at `l = max(|m|, |n|)`.
///
/// Angles must already be validated to lie in `[0, π]`.
#[derive(Debug, Clone)]
pub struct DegreeRecursion {
    m: i64,
    n: i64,
    degree: i64,
    cos_beta: Vec<f64>,
    current: Vec<f64>,
    previous: Vec<f64>,
}

impl DegreeRecursion {
    pub fn new(m: i64, n: i64, betas: &[f64]) -> Self {
        let degree = m.abs().max(n.abs());
        let current = betas
            .iter()
            .map(|&b| {
                let (s, c) = (b / 2.0).sin_cos();
                edge_entry(degree, m, n, c, s)
            })
            .collect();
        DegreeRecursion {
            m,
            n,
            degree,
            cos_beta: betas.iter().map(|b| b.cos()).collect(),
            current,
            previous: vec![0.0; betas.len()],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// `d^l_{m,n}(β_k)` for the current degree, one value per angle.
    pub fn values(&self) -> &[f64] {
        &self.current
    }

    pub fn advance(&mut self) {
        let (a, b, c) = step_coefficients(self.degree, self.m, self.n);
        for ((cur, prev), &cb) in self.current.iter_mut().zip(self.previous.iter_mut()).zip(&self.cos_beta) {
            let next = a * ((cb - b) * *cur - c * *prev);
            *prev = *cur;
            *cur = next;
        }
        self.degree += 1;
    }
}

/// [`DegreeRecursion`] at a single angle, without allocation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PointRecursion {
    m: i64,
    n: i64,
    degree: i64,
    cos_beta: f64,
    current: f64,
    previous: f64,
}

impl PointRecursion {
    /// `half = (cos β/2, sin β/2)`.
    pub(crate) fn new(m: i64, n: i64, half: (f64, f64), cos_beta: f64) -> Self {
        let degree = m.abs().max(n.abs());
        PointRecursion {
            m,
            n,
            degree,
            cos_beta,
            current: edge_entry(degree, m, n, half.0, half.1),
            previous: 0.0,
        }
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.current
    }

    #[inline]
    pub(crate) fn advance(&mut self) {
        let (a, b, c) = step_coefficients(self.degree, self.m, self.n);
        let next = a * ((self.cos_beta - b) * self.current - c * self.previous);
        self.previous = self.current;
        self.current = next;
        self.degree += 1;
    }
}
