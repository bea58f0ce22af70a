//! Seeded test data: random band-limited coefficient sets, a synthetic
//! surface for matching, and uniformly distributed rotations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use so3ft_core::geometry::{EulerAngles, RotationMatrix};
use so3ft_core::transforms::{S2Coefficients, SO3Coefficients, SO3Samples, SampleGrid};
use so3ft_core::Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-1, 1]`.
pub fn random_so3_real(bandwidth: usize, rng: &mut impl Rng) -> SO3Coefficients<f64> {
    SO3Coefficients::from_fn(bandwidth, |_, _, _| rng.random_range(-1.0..=1.0))
}

/// Real and imaginary parts uniform in `[-1, 1]`.
pub fn random_so3_complex(bandwidth: usize, rng: &mut impl Rng) -> SO3Coefficients<Complex64> {
    SO3Coefficients::from_fn(bandwidth, |_, _, _| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
}

/// Zero-mean surface with `F^l_m` uniform in `[-1/l, 1/l]`, rescaled so that
/// the mean of `f²` over the sphere is one.
pub fn synthetic_surface(bandwidth: usize, rng: &mut impl Rng) -> S2Coefficients<f64> {
    let raw = S2Coefficients::from_fn(bandwidth, |l, _| if l == 0 { 0.0 } else { rng.random_range(-1.0..=1.0) / l as f64 });
    // mean of f² is Σ (F^l_m)² / 4π
    let energy: f64 = raw.as_slice().iter().map(|v| v * v).sum::<f64>() / (4.0 * std::f64::consts::PI);
    let scale = if energy > 0.0 { energy.sqrt().recip() } else { 0.0 };
    S2Coefficients::from_fn(bandwidth, |l, m| scale * raw.get(l, m))
}

/// Haar-uniform rotation from a uniformly sampled unit quaternion.
pub fn uniform_rotation(rng: &mut impl Rng) -> RotationMatrix {
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let tau = std::f64::consts::TAU;
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (w, x, y, z) = (a * (tau * u2).sin(), a * (tau * u2).cos(), b * (tau * u3).sin(), b * (tau * u3).cos());
    RotationMatrix::new([
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ])
    .expect("unit quaternions give rotations")
}

/// `tr R(α, β, γ)`.
pub fn trace(e: &EulerAngles) -> f64 {
    let r = e.to_matrix();
    let m = r.as_array();
    m[0][0] + m[1][1] + m[2][2]
}

pub fn trace_samples(grid: &SampleGrid) -> SO3Samples<f64> {
    SO3Samples::from_fn(grid, trace)
}
