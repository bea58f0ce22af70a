//! Wall-clock timing of the real SO(3) transforms across thread counts.

use std::fmt::Write as _;
use std::time::Instant;

use so3ft_core::transforms::So3Fft;

use crate::backends::{RayonExecutor, RustFftBackend};
use crate::synthetic::{random_so3_real, rng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub bandwidth: usize,
    pub threads: usize,
    pub forward_seconds: f64,
    pub inverse_seconds: f64,
    /// Single-thread forward time over this row's forward time.
    pub speedup: f64,
}

#[derive(Debug, Clone, Copy)]
struct Timing {
    forward: f64,
    inverse: f64,
}

fn time_once(bandwidth: usize, threads: usize, repeats: usize, seed: u64) -> anyhow::Result<Timing> {
    let fft = So3Fft::with_backends(bandwidth, RayonExecutor::new(threads)?, RustFftBackend::new())?;
    let coeffs = random_so3_real(bandwidth, &mut rng(seed));
    let samples = fft.inverse_real(&coeffs)?;
    // warm the plan cache
    fft.forward_real(&samples)?;
    let (mut forward, mut inverse) = (0.0, 0.0);
    for _ in 0..repeats {
        let t = Instant::now();
        std::hint::black_box(fft.forward_real(&samples)?);
        forward += t.elapsed().as_secs_f64();
        let t = Instant::now();
        std::hint::black_box(fft.inverse_real(&coeffs)?);
        inverse += t.elapsed().as_secs_f64();
    }
    Ok(Timing {
        forward: forward / repeats as f64,
        inverse: inverse / repeats as f64,
    })
}

/// Mean forward and inverse times over `repeats` runs for each bandwidth and
/// thread count. The single-thread baseline is measured even when 1 is not
/// among `threads`.
pub fn run_bench(bandwidths: &[usize], threads: &[usize], repeats: usize, seed: u64) -> anyhow::Result<Vec<BenchRow>> {
    anyhow::ensure!(repeats >= 1, "repeats must be at least 1");
    let mut rows = Vec::new();
    for &b in bandwidths {
        let baseline = time_once(b, 1, repeats, seed)?;
        for &n in threads {
            let t = if n == 1 { baseline } else { time_once(b, n, repeats, seed)? };
            rows.push(BenchRow {
                bandwidth: b,
                threads: n,
                forward_seconds: t.forward,
                inverse_seconds: t.inverse,
                speedup: if n == 1 { 1.0 } else { baseline.forward / t.forward },
            });
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("bandwidth,threads,forward_seconds,inverse_seconds,speedup\n");
    for r in rows {
        writeln!(out, "{},{},{:.6e},{:.6e},{:.4}", r.bandwidth, r.threads, r.forward_seconds, r.inverse_seconds, r.speedup).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_thread_speedup_is_one() {
        let rows = run_bench(&[2], &[1, 2], 1, 0).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].speedup, 1.0);
        assert!(rows.iter().all(|r| r.forward_seconds > 0.0 && r.inverse_seconds > 0.0));
        let csv = to_csv(&rows);
        assert!(csv.starts_with("bandwidth,threads,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
