//! Rotation recovery between two band-limited functions on the sphere.
//!
//! With `f(x) = Σ_l (F^l)ᵀ S^l(x)` and `g(x) = Σ_l (G^l)ᵀ S^l(x)` in real
//! spherical harmonics, the correlation `C(R) = ⟨g(x), f(Rᵀx)⟩` is the finite
//! sum `(1/4π) Σ_l (G^l)ᵀ U^l(R) F^l`. Its body-frame gradient has components
//! `(1/4π) Σ_l (G^l)ᵀ U^l(R) u^l(e_i) F^l`. [`match_shapes`] runs fixed-step
//! gradient ascent `R ← R exp(δ ∇C)` from an initial guess.

use alloc::vec::Vec;
use core::f64::consts::PI;


use crate::geometry::{exp_so3, matrix_to_euler, Axis, EulerAngles, RotationMatrix, Vector3};
use crate::real_rep::{apply_u, apply_u_transpose, deriv_u_real, psi_kernel};
use crate::transforms::{Executor, S2Coefficients, Sequential};
use crate::{Error, Result};

/// Gradient-ascent parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchConfig {
    /// Step size `δ`.
    pub step_size: f64,
    /// Stop once `‖∇C‖ < tolerance`.
    pub tolerance: f64,
    pub max_iters: usize,
    pub initial_guess: EulerAngles,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            step_size: 5e-3,
            tolerance: 1e-6,
            max_iters: 10_000,
            initial_guess: EulerAngles::ZERO,
        }
    }
}

impl MatchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::InvalidConfig("step size must be positive"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig("tolerance must be positive"));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1"));
        }
        Ok(())
    }
}

/// State at one iterate, before the update is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub correlation: f64,
    pub gradient_norm: f64,
    pub euler: EulerAngles,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MatchTrace {
    pub records: Vec<TraceRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    /// Final iterate when converged, otherwise the best iterate seen.
    pub rotation: RotationMatrix,
    pub euler: EulerAngles,
    pub correlation: f64,
    pub converged: bool,
    /// Number of updates applied.
    pub iterations: usize,
    pub trace: MatchTrace,
}

/// Correlation and gradient evaluator for a fixed pair `(F, G)`.
///
/// `u^l(e_i) F^l` does not depend on `R`, so it is formed once.
#[derive(Debug, Clone)]
pub struct Correlator {
    bandwidth: usize,
    f: S2Coefficients<f64>,
    g: S2Coefficients<f64>,
    // [l][axis] -> u^l(e_axis) F^l
    derived: Vec<[Vec<f64>; 3]>,
}

impl Correlator {
    pub fn new(f: &S2Coefficients<f64>, g: &S2Coefficients<f64>) -> Result<Self> {
        if f.bandwidth() != g.bandwidth() {
            return Err(Error::BandwidthMismatch {
                left: f.bandwidth(),
                right: g.bandwidth(),
            });
        }
        let derived = (0..f.bandwidth())
            .map(|l| Axis::ALL.map(|axis| deriv_u_real(l, axis).matrix().matvec(f.degree(l))))
            .collect();
        Ok(Correlator {
            bandwidth: f.bandwidth(),
            f: f.clone(),
            g: g.clone(),
            derived,
        })
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn correlation(&self, r: &RotationMatrix) -> f64 {
        self.evaluate(r).0
    }

    pub fn gradient(&self, r: &RotationMatrix) -> Vector3 {
        self.evaluate(r).1
    }

    /// `(C(R), ∇C(R))` on the calling thread.
    pub fn evaluate(&self, r: &RotationMatrix) -> (f64, Vector3) {
        self.evaluate_with(&Sequential, r)
    }

    /// `(C(R), ∇C(R))` with one task per degree; partial sums are combined in
    /// degree order.
    pub fn evaluate_with<E: Executor>(&self, exec: &E, r: &RotationMatrix) -> (f64, Vector3) {
        let e = matrix_to_euler(r);
        let kernel = psi_kernel(self.bandwidth, e.beta()).expect("beta from matrix_to_euler lies in [0, π]");
        let parts = exec.map(self.bandwidth, |l| {
            let y = apply_u_transpose(&kernel, l, e.alpha(), e.gamma(), self.g.degree(l));
            let c = dot(&y, self.f.degree(l));
            let grad = [0, 1, 2].map(|i| dot(&y, &self.derived[l][i]));
            (c, grad)
        });
        let mut c = 0.0;
        let mut grad = [0.0; 3];
        for (pc, pg) in parts {
            c += pc;
            for i in 0..3 {
                grad[i] += pg[i];
            }
        }
        let scale = 1.0 / (4.0 * PI);
        (c * scale, Vector3(grad.map(|x| x * scale)))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `C(R) = (1/4π) Σ_l (G^l)ᵀ U^l(R) F^l`.
pub fn correlation(f: &S2Coefficients<f64>, g: &S2Coefficients<f64>, r: &RotationMatrix) -> Result<f64> {
    Ok(Correlator::new(f, g)?.correlation(r))
}

/// Body-frame gradient: `d/dε C(R exp(ε η̂))|₀ = ∇C(R) · η`.
pub fn correlation_gradient(f: &S2Coefficients<f64>, g: &S2Coefficients<f64>, r: &RotationMatrix) -> Result<Vector3> {
    Ok(Correlator::new(f, g)?.gradient(r))
}

/// Coefficients of `f(Rᵀx)`: `G^l = U^l(R) F^l`.
pub fn rotate_coefficients(f: &S2Coefficients<f64>, r: &RotationMatrix) -> S2Coefficients<f64> {
    let b = f.bandwidth();
    let e = matrix_to_euler(r);
    let kernel = psi_kernel(b, e.beta()).expect("beta from matrix_to_euler lies in [0, π]");
    let mut out = S2Coefficients::zeros(b);
    for l in 0..b {
        let rotated = apply_u(&kernel, l, e.alpha(), e.gamma(), f.degree(l));
        for (i, v) in rotated.into_iter().enumerate() {
            out.set(l, i as i64 - l as i64, v);
        }
    }
    out
}

/// Fixed-step gradient ascent on `C`.
///
/// Each iteration evaluates `(C, ∇C)` at the current rotation, stops when
/// `‖∇C‖ < ε`, and otherwise updates `R ← R exp(δ hat(∇C))`. If `max_iters`
/// updates pass without convergence, the iterate with the largest correlation
/// is returned with `converged = false`.
pub fn match_shapes(f: &S2Coefficients<f64>, g: &S2Coefficients<f64>, cfg: &MatchConfig) -> Result<MatchResult> {
    cfg.validate()?;
    let correlator = Correlator::new(f, g)?;
    Ok(run(&correlator, cfg, &Sequential))
}

/// [`match_shapes`] with a caller-supplied executor for the degree sums.
pub fn match_shapes_with<E: Executor>(correlator: &Correlator, cfg: &MatchConfig, exec: &E) -> Result<MatchResult> {
    cfg.validate()?;
    Ok(run(correlator, cfg, exec))
}

fn run<E: Executor>(correlator: &Correlator, cfg: &MatchConfig, exec: &E) -> MatchResult {
    let mut euler = cfg.initial_guess;
    let mut trace = MatchTrace::default();
    let mut best: Option<TraceRecord> = None;
    for iteration in 0..=cfg.max_iters {
        let r = euler.to_matrix();
        let (c, grad) = correlator.evaluate_with(exec, &r);
        let record = TraceRecord {
            iteration,
            correlation: c,
            gradient_norm: grad.norm(),
            euler,
        };
        trace.records.push(record);
        if best.is_none_or(|b| c > b.correlation) {
            best = Some(record);
        }
        if record.gradient_norm < cfg.tolerance {
            return MatchResult {
                rotation: r,
                euler,
                correlation: c,
                converged: true,
                iterations: iteration,
                trace,
            };
        }
        if iteration == cfg.max_iters {
            break;
        }
        // re-deriving the angles keeps the iterate exactly orthogonal
        euler = matrix_to_euler(&(r * exp_so3(&grad.scale(cfg.step_size))));
    }
    let best = best.expect("at least one iterate is evaluated");
    MatchResult {
        rotation: best.euler.to_matrix(),
        euler: best.euler,
        correlation: best.correlation,
        converged: false,
        iterations: cfg.max_iters,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_rep::SphericalPoint;
    use crate::geometry::max_abs_diff;
    use crate::real_rep::real_sph_harm_all;
    use crate::transforms::make_grid;
    use core::f64::consts::TAU;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_coeffs(rng: &mut ChaCha8Rng, b: usize) -> S2Coefficients<f64> {
        S2Coefficients::from_fn(b, |l, _| rng.random_range(-1.0..1.0) / (1.0 + l as f64).powf(1.5))
    }

    fn random_rotation(rng: &mut ChaCha8Rng) -> RotationMatrix {
        EulerAngles::new(rng.random_range(0.0..TAU), rng.random_range(0.0..PI), rng.random_range(0.0..TAU))
            .unwrap()
            .to_matrix()
    }

    #[test]
    fn constant_functions() {
        let mut f = S2Coefficients::zeros(3);
        f.set(0, 0, 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let r = random_rotation(&mut rng);
            assert!((correlation(&f, &f, &r).unwrap() - 4.0 / (4.0 * PI)).abs() < 1e-15);
        }
        let g = correlation_gradient(&S2Coefficients::from_fn(1, |_, _| 3.0), &S2Coefficients::from_fn(1, |_, _| 1.0), &random_rotation(&mut rng)).unwrap();
        assert_eq!(g.0, [0.0; 3]);
    }

    #[test]
    fn identity_gives_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_coeffs(&mut rng, 6);
        let energy: f64 = f.as_slice().iter().map(|x| x * x).sum::<f64>() / (4.0 * PI);
        let c = correlation(&f, &f, &RotationMatrix::IDENTITY).unwrap();
        assert!((c - energy).abs() < 1e-14);
        for _ in 0..10 {
            assert!(correlation(&f, &f, &random_rotation(&mut rng)).unwrap() <= energy + 1e-14);
        }
    }

    #[test]
    fn matches_quadrature() {
        let b = 8;
        let grid = make_grid(b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (f, g) = (random_coeffs(&mut rng, b), random_coeffs(&mut rng, b));
        let r = random_rotation(&mut rng);
        let eval = |c: &S2Coefficients<f64>, x: &Vector3| {
            let s = real_sph_harm_all(b, &SphericalPoint::from_vector(x));
            dot(&s, c.as_slice())
        };
        let mut sum = 0.0;
        for k in 0..grid.size() {
            for j in 0..grid.size() {
                let p = SphericalPoint::new(grid.beta()[k], grid.alpha()[j]).unwrap();
                let x = p.to_vector();
                sum += grid.weights()[k] * eval(&g, &x) * eval(&f, &r.transpose().apply(&x));
            }
        }
        // (1/4π) ∫ dΩ ≈ 2B Σ_k w_k Σ_j
        let quad = 2.0 * b as f64 * sum;
        assert!((correlation(&f, &g, &r).unwrap() - quad).abs() < 1e-8);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let b = rng.random_range(2..8);
            let (f, g) = (random_coeffs(&mut rng, b), random_coeffs(&mut rng, b));
            let corr = Correlator::new(&f, &g).unwrap();
            let r = random_rotation(&mut rng);
            let grad = corr.gradient(&r);
            let h = 1e-6;
            for i in 0..3 {
                let step = Vector3::basis(i).scale(h);
                let plus = corr.correlation(&(r * exp_so3(&step)));
                let minus = corr.correlation(&(r * exp_so3(&step.scale(-1.0))));
                assert!(((plus - minus) / (2.0 * h) - grad.0[i]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn rotated_problem_is_stationary_at_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_coeffs(&mut rng, 8);
        let truth = random_rotation(&mut rng);
        let g = rotate_coefficients(&f, &truth);
        assert!(correlation_gradient(&f, &g, &truth).unwrap().norm() < 1e-8);
    }

    #[test]
    fn matcher_converges_on_identical_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = random_coeffs(&mut rng, 5);
        let out = match_shapes(&f, &f, &MatchConfig::default()).unwrap();
        assert!(out.converged);
        assert_eq!(out.iterations, 0);
        assert!(max_abs_diff(out.rotation.as_array(), RotationMatrix::IDENTITY.as_array()) < 1e-15);
    }

    #[test]
    fn matcher_recovers_small_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // unit mean square with a 1/l spectrum keeps the optimum well curved
        let mut f = S2Coefficients::from_fn(6, |l, _| if l == 0 { 0.0 } else { rng.random_range(-1.0..1.0) / l as f64 });
        let scale = (4.0 * PI / f.as_slice().iter().map(|x| x * x).sum::<f64>()).sqrt();
        f = S2Coefficients::from_fn(6, |l, m| scale * f.get(l, m));
        let truth = exp_so3(&Vector3([0.1, -0.2, 0.15]));
        let g = rotate_coefficients(&f, &truth);
        let out = match_shapes(&f, &g, &MatchConfig::default()).unwrap();
        assert!(out.converged);
        assert!(max_abs_diff(out.rotation.as_array(), truth.as_array()) < 1e-5);
    }

    #[test]
    fn rejects_bad_config() {
        let f = S2Coefficients::zeros(2);
        for cfg in [
            MatchConfig { step_size: 0.0, ..MatchConfig::default() },
            MatchConfig { tolerance: -1.0, ..MatchConfig::default() },
            MatchConfig { max_iters: 0, ..MatchConfig::default() },
        ] {
            assert!(matches!(match_shapes(&f, &f, &cfg), Err(Error::InvalidConfig(_))));
        }
        assert!(matches!(correlation(&f, &S2Coefficients::zeros(3), &RotationMatrix::IDENTITY), Err(Error::BandwidthMismatch { .. })));
    }
}
