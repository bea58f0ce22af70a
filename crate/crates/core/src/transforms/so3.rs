//! Forward and inverse transforms on SO(3).
//!
//! Both directions split into a trigonometric stage over `(α, γ)` at each
//! `β_k` (a 2-D DFT) and a `β` stage. The `β` stage handles the orders
//! `(m, n) ∈ {±a} × {±b}` of one pair `a, b ≥ 0` together, since they share the
//! two Wigner columns `d_{a,b}` and `d_{a,-b}`:
//!
//! ```text
//! d_{-a,-b} = (-1)^{a-b} d_{a,b},    d_{-a,b} = (-1)^{a+b} d_{a,-b}
//! Ψ_{±a,n} = c₁ d_{a,b} ± c₂ d_{a,-b}
//! ```
//!
//! with `(c₁, c₂) = ((-1)^{a-b}, (-1)^a)` when `ab ≠ 0`, `(√2 (-1)^{a-b}, 0)`
//! when exactly one of them vanishes and `(1, 0)` at the origin.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use num_complex::Complex64;
#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::special::parity;
use crate::transforms::backend::{dft2, DftBackend, Executor};
use crate::transforms::coefficients::{SO3Coefficients, SO3Samples};
use crate::transforms::grid::SampleGrid;
use crate::wigner::{DegreeRecursion, PointRecursion};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `(a, b)` for pair index `i` in `0..B²`.
#[inline]
fn pair(bandwidth: usize, i: usize) -> (i64, i64) {
    ((i / bandwidth) as i64, (i % bandwidth) as i64)
}

/// Signed orders `(m, n)` covered by a pair, without duplicates.
fn sign_combos(a: i64, b: i64) -> impl Iterator<Item = (i64, i64)> {
    let ms: &[i64] = if a == 0 { &[1] } else { &[1, -1] };
    let ns: &[i64] = if b == 0 { &[1] } else { &[1, -1] };
    ms.iter().flat_map(move |&sm| ns.iter().map(move |&sn| (sm * a, sn * b)))
}

/// `(c₁, c₂)` with `Ψ_{m,n} = c₁ d_{a,b} + c₂ d_{a,-b}` for `|m| = a`, `|n| = b`.
#[inline]
fn psi_coefficients(m: i64, n: i64) -> (f64, f64) {
    let (a, b) = (m.abs(), n.abs());
    match (a == 0, b == 0) {
        (true, true) => (1.0, 0.0),
        (false, false) => (parity(a - b), parity(a) * m.signum() as f64),
        _ => (SQRT_2 * parity(a - b), 0.0),
    }
}

#[inline]
fn wrap(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// Per-`k` 2-D spectra of the samples, `H^k[p][q]`.
fn spectra<T, E, D>(samples: &SO3Samples<T>, exec: &E, dft: &D, inverse: bool, to_complex: impl Fn(T) -> Complex64 + Sync) -> Vec<Vec<Complex64>>
where
    T: crate::Scalar,
    E: Executor,
    D: DftBackend,
{
    let n = samples.size();
    exec.map(n, |k| {
        let mut h = Vec::with_capacity(n * n);
        for j1 in 0..n {
            for j2 in 0..n {
                h.push(to_complex(samples.get(j1, k, j2)));
            }
        }
        dft2(dft, n, &mut h, inverse);
        h
    })
}

/// Pair-major degree recursion over all `β_k`; calls `visit(l, d_{a,b}, d_{a,-b})`.
fn for_each_degree(bandwidth: usize, a: i64, b: i64, beta: &[f64], mut visit: impl FnMut(usize, &[f64], &[f64])) {
    let mut plus = DegreeRecursion::new(a, b, beta);
    let mut minus = if b != 0 { Some(DegreeRecursion::new(a, -b, beta)) } else { None };
    loop {
        let l = plus.degree();
        let d2 = minus.as_ref().map_or(plus.values(), |r| r.values());
        visit(l, plus.values(), d2);
        if l + 1 >= bandwidth {
            break;
        }
        plus.advance();
        if let Some(r) = minus.as_mut() {
            r.advance();
        }
    }
}

/// One value per degree `l ≥ max(a, b)` for each signed combination.
struct PairResult {
    combos: Vec<(i64, i64)>,
    start: usize,
    values: Vec<Vec<Complex64>>,
}

fn scatter<T: crate::Scalar>(bandwidth: usize, results: Vec<PairResult>, convert: impl Fn(Complex64) -> T) -> SO3Coefficients<T> {
    let mut out = SO3Coefficients::zeros(bandwidth);
    for r in results {
        for (&(m, n), vals) in r.combos.iter().zip(&r.values) {
            for (i, &v) in vals.iter().enumerate() {
                out.set(r.start + i, m, n, convert(v));
            }
        }
    }
    out
}

pub(crate) fn forward_real<E: Executor, D: DftBackend>(grid: &SampleGrid, samples: &SO3Samples<f64>, exec: &E, dft: &D) -> SO3Coefficients<f64> {
    let bw = grid.bandwidth();
    let n = grid.size();
    // H = Σ f e^{-i(pα + qγ)}: Σ f cos(mα+nγ) = Re H, Σ f sin(mα+nγ) = -Im H
    let h = spectra(samples, exec, dft, false, |v| Complex64::new(v, 0.0));
    let weights = grid.weights();
    let results = exec.map(bw * bw, |i| {
        let (a, b) = pair(bw, i);
        let combos: Vec<(i64, i64)> = sign_combos(a, b).collect();
        // per combination and k: coefficients of d_{a,b} and d_{a,-b}
        let mut c_plus = vec![vec![0.0; n]; combos.len()];
        let mut c_minus = vec![vec![0.0; n]; combos.len()];
        for (ci, &(m, nn)) in combos.iter().enumerate() {
            let (c1, c2) = psi_coefficients(m, nn);
            for k in 0..n {
                let hk = &h[k];
                let at = |p: i64, q: i64| hk[wrap(p, n) * n + wrap(q, n)];
                let (same, opposite) = (at(m, nn), at(m, -nn));
                // coefficient of Ψ_{m,n} and of Ψ_{-m,n}
                let (x, y) = if (m >= 0) == (nn >= 0) {
                    let (g, gm) = (same.re, opposite.re);
                    (0.5 * (gm + g), -0.5 * (gm - g))
                } else {
                    let (f, fm) = (-same.im, -opposite.im);
                    (0.5 * (f - fm), -0.5 * (f + fm))
                };
                let w = weights[k];
                c_plus[ci][k] = w * c1 * (x + y);
                c_minus[ci][k] = w * c2 * (x - y);
            }
        }
        let start = a.max(b) as usize;
        let mut values = vec![Vec::with_capacity(bw - start); combos.len()];
        for_each_degree(bw, a, b, grid.beta(), |_, d1, d2| {
            for ci in 0..combos.len() {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += c_plus[ci][k] * d1[k] + c_minus[ci][k] * d2[k];
                }
                values[ci].push(Complex64::new(acc, 0.0));
            }
        });
        PairResult { combos, start, values }
    });
    scatter(bw, results, |v| v.re)
}

pub(crate) fn inverse_real<E: Executor, D: DftBackend>(grid: &SampleGrid, coeffs: &SO3Coefficients<f64>, exec: &E, dft: &D) -> SO3Samples<f64> {
    let bw = grid.bandwidth();
    let n = grid.size();
    let slices = exec.map(n, |k| {
        let beta = grid.beta()[k];
        let half = ((beta / 2.0).cos(), (beta / 2.0).sin());
        let cos_beta = beta.cos();
        let mut z = vec![ZERO; n * n];
        for i in 0..bw * bw {
            let (a, b) = pair(bw, i);
            let mut plus = PointRecursion::new(a, b, half, cos_beta);
            let mut minus = PointRecursion::new(a, -b, half, cos_beta);
            let mut x1 = [0.0f64; 4];
            let mut x2 = [0.0f64; 4];
            let combos: [(i64, i64); 4] = [(a, b), (a, -b), (-a, b), (-a, -b)];
            let used = |ci: usize| (a != 0 || ci < 2) && (b != 0 || ci.is_multiple_of(2));
            for l in (a.max(b) as usize)..bw {
                let (d1, d2) = (plus.value(), if b != 0 { minus.value() } else { plus.value() });
                let scale = (2 * l + 1) as f64;
                for (ci, &(m, nn)) in combos.iter().enumerate() {
                    if used(ci) {
                        let f = scale * coeffs.get(l, m, nn);
                        x1[ci] += f * d1;
                        x2[ci] += f * d2;
                    }
                }
                plus.advance();
                if b != 0 {
                    minus.advance();
                }
            }
            for (ci, &(m, nn)) in combos.iter().enumerate() {
                if !used(ci) {
                    continue;
                }
                let (c1, c2) = psi_coefficients(m, nn);
                // s multiplies Ψ_{m,n}, t multiplies Ψ_{-m,n}
                let s = c1 * x1[ci] + c2 * x2[ci];
                let t = c1 * x1[ci] - c2 * x2[ci];
                let (i_same, i_flip) = (wrap(m, n) * n + wrap(nn, n), wrap(m, n) * n + wrap(-nn, n));
                if (m >= 0) == (nn >= 0) {
                    z[i_same] += Complex64::new(0.5 * (s + t), 0.0);
                    z[i_flip] += Complex64::new(0.5 * (s - t), 0.0);
                } else {
                    // a sine coefficient c of sin(pα + qγ) enters as -ic
                    z[i_same] += Complex64::new(0.0, -0.5 * (s - t));
                    z[i_flip] += Complex64::new(0.0, 0.5 * (s + t));
                }
            }
        }
        dft2(dft, n, &mut z, true);
        z
    });
    let mut data = vec![0.0; n * n * n];
    for (k, z) in slices.iter().enumerate() {
        for j1 in 0..n {
            for j2 in 0..n {
                data[(j1 * n + k) * n + j2] = z[j1 * n + j2].re;
            }
        }
    }
    SO3Samples::new(bw, data).expect("shape is (2B)³")
}

/// `d_{m,n}` for `|m| = a`, `|n| = b` from `d_{a,b}` and `d_{a,-b}`.
#[inline]
fn signed_d(m: i64, n: i64, d1: f64, d2: f64) -> f64 {
    let (a, b) = (m.abs(), n.abs());
    match (m >= 0, n >= 0) {
        (true, true) => d1,
        (true, false) => d2,
        (false, false) => parity(a - b) * d1,
        (false, true) => parity(a + b) * d2,
    }
}

pub(crate) fn forward_complex<E: Executor, D: DftBackend>(grid: &SampleGrid, samples: &SO3Samples<Complex64>, exec: &E, dft: &D) -> SO3Coefficients<Complex64> {
    let bw = grid.bandwidth();
    let n = grid.size();
    // conj(D_{mn}) = e^{i(mα + nγ)} d_{mn}: the unnormalized inverse DFT
    let h = spectra(samples, exec, dft, true, |v| v);
    let weights = grid.weights();
    let results = exec.map(bw * bw, |i| {
        let (a, b) = pair(bw, i);
        let combos: Vec<(i64, i64)> = sign_combos(a, b).collect();
        let weighted: Vec<Vec<Complex64>> = combos
            .iter()
            .map(|&(m, nn)| (0..n).map(|k| h[k][wrap(m, n) * n + wrap(nn, n)] * weights[k]).collect())
            .collect();
        let start = a.max(b) as usize;
        let mut values = vec![Vec::with_capacity(bw - start); combos.len()];
        for_each_degree(bw, a, b, grid.beta(), |_, d1, d2| {
            for (ci, &(m, nn)) in combos.iter().enumerate() {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += weighted[ci][k] * signed_d(m, nn, d1[k], d2[k]);
                }
                values[ci].push(acc);
            }
        });
        PairResult { combos, start, values }
    });
    scatter(bw, results, |v| v)
}

pub(crate) fn inverse_complex<E: Executor, D: DftBackend>(grid: &SampleGrid, coeffs: &SO3Coefficients<Complex64>, exec: &E, dft: &D) -> SO3Samples<Complex64> {
    let bw = grid.bandwidth();
    let n = grid.size();
    let slices = exec.map(n, |k| {
        let beta = grid.beta()[k];
        let half = ((beta / 2.0).cos(), (beta / 2.0).sin());
        let cos_beta = beta.cos();
        let mut z = vec![ZERO; n * n];
        for i in 0..bw * bw {
            let (a, b) = pair(bw, i);
            let mut plus = PointRecursion::new(a, b, half, cos_beta);
            let mut minus = PointRecursion::new(a, -b, half, cos_beta);
            let combos: Vec<(i64, i64)> = sign_combos(a, b).collect();
            let mut acc = [ZERO; 4];
            for l in (a.max(b) as usize)..bw {
                let (d1, d2) = (plus.value(), if b != 0 { minus.value() } else { plus.value() });
                let scale = (2 * l + 1) as f64;
                for (ci, &(m, nn)) in combos.iter().enumerate() {
                    acc[ci] += coeffs.get(l, m, nn) * (scale * signed_d(m, nn, d1, d2));
                }
                plus.advance();
                if b != 0 {
                    minus.advance();
                }
            }
            for (ci, &(m, nn)) in combos.iter().enumerate() {
                z[wrap(m, n) * n + wrap(nn, n)] += acc[ci];
            }
        }
        // D_{mn} = e^{-i(mα + nγ)} d_{mn}: the forward DFT
        dft2(dft, n, &mut z, false);
        z
    });
    let mut data = vec![ZERO; n * n * n];
    for (k, z) in slices.iter().enumerate() {
        for j1 in 0..n {
            for j2 in 0..n {
                data[(j1 * n + k) * n + j2] = z[j1 * n + j2];
            }
        }
    }
    SO3Samples::new(bw, data).expect("shape is (2B)³")
}
