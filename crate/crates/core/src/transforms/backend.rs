//! Pluggable parallel execution and one-dimensional DFT.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

/// Runs independent tasks and returns their results in task order.
///
/// Implementations may run tasks concurrently but must return `results[i] =
/// f(i)`; transforms only combine results in index order, so the output is
/// independent of how tasks are scheduled.
pub trait Executor: Sync {
    /// Number of workers, for reporting.
    fn threads(&self) -> usize;

    fn map<T, F>(&self, tasks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;
}

/// Runs every task on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn threads(&self) -> usize {
        1
    }

    fn map<T, F>(&self, tasks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..tasks).map(f).collect()
    }
}

impl<E: Executor> Executor for &E {
    fn threads(&self) -> usize {
        (**self).threads()
    }

    fn map<T, F>(&self, tasks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (**self).map(tasks, f)
    }
}

/// Unnormalized one-dimensional DFT applied to each contiguous row of
/// length `n` in `data`.
///
/// `forward`: `X_p = Σ_j x_j e^{-2πi pj/n}`. `inverse`: same with `e^{+2πi pj/n}`
/// and no `1/n`.
pub trait DftBackend: Sync {
    fn forward_rows(&self, n: usize, data: &mut [Complex64]);
    fn inverse_rows(&self, n: usize, data: &mut [Complex64]);
}

/// Quadratic-time DFT from a twiddle table; the reference backend.
#[derive(Debug, Clone, Copy, Default)]
pub struct DirectDft;

impl DirectDft {
    fn rows(n: usize, data: &mut [Complex64], sign: f64) {
        let twiddles: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, sign * TAU * j as f64 / n as f64))
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for row in data.chunks_exact_mut(n) {
            for (p, o) in out.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, x) in row.iter().enumerate() {
                    acc += x * twiddles[(p * j) % n];
                }
                *o = acc;
            }
            row.copy_from_slice(&out);
        }
    }
}

impl DftBackend for DirectDft {
    fn forward_rows(&self, n: usize, data: &mut [Complex64]) {
        DirectDft::rows(n, data, -1.0);
    }

    fn inverse_rows(&self, n: usize, data: &mut [Complex64]) {
        DirectDft::rows(n, data, 1.0);
    }
}

impl<D: DftBackend> DftBackend for &D {
    fn forward_rows(&self, n: usize, data: &mut [Complex64]) {
        (**self).forward_rows(n, data)
    }

    fn inverse_rows(&self, n: usize, data: &mut [Complex64]) {
        (**self).inverse_rows(n, data)
    }
}

fn transpose_square(n: usize, data: &mut [Complex64]) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// Two-dimensional DFT of an `n×n` row-major array, in place.
pub(crate) fn dft2<D: DftBackend + ?Sized>(backend: &D, n: usize, data: &mut [Complex64], inverse: bool) {
    debug_assert_eq!(data.len(), n * n);
    let run = |d: &mut [Complex64]| {
        if inverse {
            backend.inverse_rows(n, d)
        } else {
            backend.forward_rows(n, d)
        }
    };
    run(data);
    transpose_square(n, data);
    run(data);
    transpose_square(n, data);
}
