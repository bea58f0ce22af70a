//! Real transforms on S², on the `(θ_k, φ_j) = (β_k, α_j)` nodes of the SO(3)
//! grid.
//!
//! A function on S² is a `γ`-independent function on SO(3), so the SO(3)
//! quadrature applies with the `γ` sum collapsed into a factor `2B`:
//! `F^l_m = 4π · 2B Σ_{k,j} w_k S^l_m(θ_k, φ_j) f(θ_k, φ_j)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::special::parity;
use crate::transforms::backend::{DftBackend, Executor};
use crate::transforms::coefficients::{S2Coefficients, S2Samples};
use crate::transforms::grid::SampleGrid;
use crate::wigner::{DegreeRecursion, PointRecursion};

/// Factor taking `d^l_{a,0}(θ)` to the `θ` part of `S^l_{±a}`.
#[inline]
fn harmonic_scale(l: usize, a: i64) -> f64 {
    let norm = ((2 * l + 1) as f64 / (4.0 * PI)).sqrt();
    if a == 0 {
        norm
    } else {
        norm * SQRT_2 * parity(a)
    }
}

pub(crate) fn forward_s2_real<E: Executor, D: DftBackend>(grid: &SampleGrid, samples: &S2Samples<f64>, exec: &E, dft: &D) -> S2Coefficients<f64> {
    let bw = grid.bandwidth();
    let n = grid.size();
    let mut rows: Vec<Complex64> = samples.as_slice().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    dft.forward_rows(n, &mut rows);
    let scale = 4.0 * PI * n as f64;
    let per_order = exec.map(bw, |a| {
        let weighted_cos: Vec<f64> = (0..n).map(|k| scale * grid.weights()[k] * rows[k * n + a].re).collect();
        let weighted_sin: Vec<f64> = (0..n).map(|k| -scale * grid.weights()[k] * rows[k * n + a].im).collect();
        let ai = a as i64;
        let mut rec = DegreeRecursion::new(ai, 0, grid.beta());
        let mut out = Vec::with_capacity(bw - a);
        loop {
            let l = rec.degree();
            let h = harmonic_scale(l, ai);
            let d = rec.values();
            let c: f64 = (0..n).map(|k| weighted_cos[k] * d[k]).sum();
            let s: f64 = (0..n).map(|k| weighted_sin[k] * d[k]).sum();
            out.push((h * c, h * s));
            if l + 1 >= bw {
                break;
            }
            rec.advance();
        }
        out
    });
    let mut coeffs = S2Coefficients::zeros(bw);
    for (a, vals) in per_order.into_iter().enumerate() {
        for (i, (c, s)) in vals.into_iter().enumerate() {
            let l = a + i;
            coeffs.set(l, a as i64, c);
            if a > 0 {
                coeffs.set(l, -(a as i64), s);
            }
        }
    }
    coeffs
}

pub(crate) fn inverse_s2_real<E: Executor, D: DftBackend>(grid: &SampleGrid, coeffs: &S2Coefficients<f64>, exec: &E, dft: &D) -> S2Samples<f64> {
    let bw = grid.bandwidth();
    let n = grid.size();
    let rows = exec.map(n, |k| {
        let beta = grid.beta()[k];
        let half = ((beta / 2.0).cos(), (beta / 2.0).sin());
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        for a in 0..bw as i64 {
            let mut rec = PointRecursion::new(a, 0, half, beta.cos());
            let (mut c, mut s) = (0.0, 0.0);
            for l in a as usize..bw {
                let v = harmonic_scale(l, a) * rec.value();
                c += coeffs.get(l, a) * v;
                if a > 0 {
                    s += coeffs.get(l, -a) * v;
                }
                rec.advance();
            }
            // c cos aφ + s sin aφ = Re((c - is) e^{iaφ})
            z[a as usize] = Complex64::new(c, -s);
        }
        z
    });
    let mut flat: Vec<Complex64> = rows.into_iter().flatten().collect();
    dft.inverse_rows(n, &mut flat);
    S2Samples::new(bw, flat.into_iter().map(|v| v.re).collect()).expect("shape is (2B)²")
}
