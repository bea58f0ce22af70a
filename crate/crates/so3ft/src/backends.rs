//! Thread-pool executor and FFT-library DFT backend.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use so3ft_core::transforms::{DftBackend, Executor};
use so3ft_core::Complex64;

/// Runs tasks on a dedicated rayon pool of fixed size.
#[derive(Debug)]
pub struct RayonExecutor {
    pool: rayon::ThreadPool,
    threads: usize,
}

impl RayonExecutor {
    pub fn new(threads: usize) -> anyhow::Result<Self> {
        anyhow::ensure!(threads >= 1, "thread count must be at least 1");
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(RayonExecutor { pool, threads })
    }
}

impl Executor for RayonExecutor {
    fn threads(&self) -> usize {
        self.threads
    }

    fn map<T, F>(&self, tasks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        // collect() on an indexed parallel iterator preserves task order
        let f = &f;
        self.pool.install(|| (0..tasks).into_par_iter().map(f).collect())
    }
}

type Plans = HashMap<(usize, bool), Arc<dyn Fft<f64>>>;

/// Mixed-radix FFT from `rustfft`, with plans cached per length and direction.
pub struct RustFftBackend {
    plans: Mutex<(FftPlanner<f64>, Plans)>,
}

impl std::fmt::Debug for RustFftBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RustFftBackend").finish_non_exhaustive()
    }
}

impl Default for RustFftBackend {
    fn default() -> Self {
        RustFftBackend {
            plans: Mutex::new((FftPlanner::new(), HashMap::new())),
        }
    }
}

impl RustFftBackend {
    pub fn new() -> Self {
        Self::default()
    }

    fn plan(&self, n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
        let mut guard = self.plans.lock().unwrap_or_else(|e| e.into_inner());
        let (planner, cache) = &mut *guard;
        Arc::clone(cache.entry((n, inverse)).or_insert_with(|| {
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        }))
    }
}

impl DftBackend for RustFftBackend {
    fn forward_rows(&self, n: usize, data: &mut [Complex64]) {
        self.plan(n, false).process(data);
    }

    fn inverse_rows(&self, n: usize, data: &mut [Complex64]) {
        self.plan(n, true).process(data);
    }
}
