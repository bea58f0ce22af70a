//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use so3ft::backends::{RayonExecutor, RustFftBackend};
use so3ft::bench::run_bench;
use so3ft::synthetic::{random_so3_complex, random_so3_real, synthetic_surface};
use so3ft_core::clebsch_gordan::{cg_complex_matrix, cg_real_matrix, cg_real_matrix_from_complex, product_expand_complex, product_expand_real};
use so3ft_core::complex_rep::{deriv_u_complex, wigner_D};
use so3ft_core::geometry::{exp_so3, matrix_to_euler, Axis, EulerAngles, Vector3};
use so3ft_core::real_rep::{deriv_u_real, real_U, real_U_entrywise, t_matrix};
use so3ft_core::shape_match::{match_shapes, rotate_coefficients, Correlator, MatchConfig};
use so3ft_core::transforms::{forward_real, make_grid, DirectDft, S2Coefficients, SO3Coefficients, SO3Samples, Sequential, So3Fft};
use so3ft_core::wigner::wigner_d_stack;
use so3ft_core::{Complex64, Matrix};

struct Outcome {
    pass: bool,
    detail: String,
}

fn random_euler(rng: &mut ChaCha8Rng) -> EulerAngles {
    EulerAngles::new(rng.random_range(0.0..TAU), rng.random_range(0.0..PI), rng.random_range(0.0..TAU)).unwrap()
}

/// `conj(T) D Tᵀ`, built from the complex representation only.
fn u_via_complex(l: usize, e: &EulerAngles) -> Matrix<f64> {
    let t = t_matrix(l).into_matrix();
    let u = t.conj().matmul(wigner_D(l, e).matrix()).matmul(&t.transpose());
    u.real_part()
}

fn max_abs(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    a.max_abs_diff(b)
}

// 1. Forward after inverse reproduces random coefficients.
fn criterion_1() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (b, tol) in [(8, 1e-12), (16, 1e-11), (32, 1e-11), (64, 1e-10)] {
        let fft = So3Fft::with_backends(b, Sequential, RustFftBackend::new()).unwrap();
        let f = random_so3_real(b, &mut ChaCha8Rng::seed_from_u64(b as u64));
        let start = Instant::now();
        let g = fft.forward_real(&fft.inverse_real(&f).unwrap()).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let err = f.block_error(&g).unwrap();
        pass &= err <= tol;
        if b == 64 {
            pass &= secs < 60.0;
            parts.push(format!("B={b} error={err:.3e} (tol {tol:.0e}) time={secs:.2}s (limit 60s)"));
        } else {
            parts.push(format!("B={b} error={err:.3e} (tol {tol:.0e})"));
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

// 2. Three constructions of the real representation agree.
fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut via_t, mut entrywise) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let e = random_euler(&mut rng);
        for l in 0..=16 {
            let factored = real_U(l, &e).into_matrix();
            via_t = via_t.max(max_abs(&factored, &u_via_complex(l, &e)));
            entrywise = entrywise.max(max_abs(&factored, real_U_entrywise(l, &e).matrix()));
        }
    }
    Outcome {
        pass: via_t <= 1e-11 && entrywise <= 1e-12,
        detail: format!("factored vs conj(T)DTᵀ {via_t:.3e} (tol 1e-11); factored vs entrywise {entrywise:.3e} (tol 1e-12)"),
    }
}

/// Legendre polynomials by the three-term recurrence.
fn legendre(lmax: usize, x: f64) -> Vec<f64> {
    let mut p = vec![1.0, x];
    for l in 1..lmax {
        let lf = l as f64;
        p.push(((2.0 * lf + 1.0) * x * p[l] - lf * p[l - 1]) / (lf + 1.0));
    }
    p.truncate(lmax + 1);
    p
}

// 3. Quadrature weights integrate Legendre polynomials exactly.
fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for b in [2usize, 4, 8, 16, 32] {
        let grid = make_grid(b).unwrap();
        let lmax = 2 * b - 1;
        let mut sums = vec![0.0; lmax + 1];
        for (k, &beta) in grid.beta().iter().enumerate() {
            for (l, p) in legendre(lmax, beta.cos()).into_iter().enumerate() {
                sums[l] += grid.weights()[k] * p;
            }
        }
        for (l, s) in sums.into_iter().enumerate() {
            let want = if l == 0 { 1.0 / (4.0 * (b * b) as f64) } else { 0.0 };
            worst = worst.max((s - want).abs());
        }
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("max deviation {worst:.3e} over l ≤ 2B-1, B ∈ {{2,4,8,16,32}} (tol 1e-12)"),
    }
}

// 4. Clebsch-Gordan identities.
fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut kron_c, mut kron_r, mut elem_c, mut elem_r) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let rotations: Vec<EulerAngles> = (0..10).map(|_| random_euler(&mut rng)).collect();
    let d: Vec<Vec<Matrix<Complex64>>> = rotations.iter().map(|e| (0..=8).map(|l| wigner_D(l, e).into_matrix()).collect()).collect();
    let u: Vec<Vec<Matrix<f64>>> = rotations.iter().map(|e| (0..=8).map(|l| real_U(l, e).into_matrix()).collect()).collect();
    let at = |m: &Matrix<f64>, l: usize, a: i64, b: i64| m.get((a + l as i64) as usize, (b + l as i64) as usize);
    let atc = |m: &Matrix<Complex64>, l: usize, a: i64, b: i64| m.get((a + l as i64) as usize, (b + l as i64) as usize);

    for l1 in 0..=4usize {
        for l2 in 0..=4usize {
            let range = l1.abs_diff(l2)..=l1 + l2;
            let c = Matrix::from_real(cg_complex_matrix(l1, l2).matrix());
            let r = cg_real_matrix(l1, l2).matrix().clone();
            for (di, ui) in d.iter().zip(&u) {
                let lhs = di[l1].kron(&di[l2]);
                let blocks: Vec<Matrix<Complex64>> = range.clone().map(|l| di[l].clone()).collect();
                kron_c = kron_c.max(lhs.max_abs_diff(&c.matmul(&Matrix::direct_sum(&blocks)).matmul(&c.transpose())));
                let lhs = Matrix::from_real(&ui[l1].kron(&ui[l2]));
                let blocks: Vec<Matrix<Complex64>> = range.clone().map(|l| Matrix::from_real(&ui[l])).collect();
                kron_r = kron_r.max(lhs.max_abs_diff(&r.matmul(&Matrix::direct_sum(&blocks)).matmul(&r.adjoint())));
            }
            let (j1, j2) = (l1 as i64, l2 as i64);
            for m1 in -j1..=j1 {
                for n1 in -j1..=j1 {
                    for m2 in -j2..=j2 {
                        for n2 in -j2..=j2 {
                            let terms_r = product_expand_real(l1, m1, n1, l2, m2, n2).unwrap();
                            let terms_c = product_expand_complex(l1, m1, n1, l2, m2, n2).unwrap();
                            for (di, ui) in d.iter().zip(&u) {
                                let want = at(&ui[l1], l1, m1, n1) * at(&ui[l2], l2, m2, n2);
                                let got: f64 = terms_r.iter().map(|t| t.coefficient * at(&ui[t.l], t.l, t.m, t.n)).sum();
                                elem_r = elem_r.max((got - want).abs());
                                let want = atc(&di[l1], l1, m1, n1) * atc(&di[l2], l2, m2, n2);
                                let got: Complex64 = terms_c.iter().map(|t| atc(&di[t.l], t.l, t.m, t.n) * t.coefficient).sum();
                                elem_c = elem_c.max((got - want).norm());
                            }
                        }
                    }
                }
            }
        }
    }

    let (mut unitary, mut table) = (0.0f64, 0.0f64);
    for l1 in 0..=5usize {
        for l2 in 0..=5usize {
            let r = cg_real_matrix(l1, l2);
            let prod = r.matrix().matmul(&r.matrix().adjoint());
            unitary = unitary.max(prod.max_abs_diff(&Matrix::identity(prod.rows())));
            table = table.max(r.matrix().max_abs_diff(cg_real_matrix_from_complex(l1, l2).matrix()));
        }
    }
    let pass = kron_c <= 1e-10 && kron_r <= 1e-10 && elem_c <= 1e-10 && elem_r <= 1e-10 && unitary <= 1e-12 && table <= 1e-12;
    Outcome {
        pass,
        detail: format!(
            "Kronecker complex {kron_c:.2e} real {kron_r:.2e}, products complex {elem_c:.2e} real {elem_r:.2e} (tol 1e-10); c·c̄ᵀ-I {unitary:.2e}, table vs triple product {table:.2e} (tol 1e-12)"
        ),
    }
}

// 5. Lie-algebra representations.
fn criterion_5() -> Outcome {
    let h = 1e-6;
    let (mut fd_r, mut fd_c, mut comm) = (0.0f64, 0.0f64, 0.0f64);
    for l in 0..=8 {
        for axis in Axis::ALL {
            let plus = matrix_to_euler(&exp_so3(&axis.vector().scale(h)));
            let minus = matrix_to_euler(&exp_so3(&axis.vector().scale(-h)));
            let du = real_U(l, &plus).into_matrix().sub(real_U(l, &minus).matrix());
            let fd = Matrix::from_fn(du.rows(), du.cols(), |i, j| du.get(i, j) / (2.0 * h));
            fd_r = fd_r.max(fd.max_abs_diff(deriv_u_real(l, axis).matrix()));
            let dd = wigner_D(l, &plus).into_matrix().sub(wigner_D(l, &minus).matrix());
            let fd = Matrix::from_fn(dd.rows(), dd.cols(), |i, j| dd.get(i, j) / (2.0 * h));
            fd_c = fd_c.max(fd.max_abs_diff(deriv_u_complex(l, axis).matrix()));
        }
        let [u1, u2, u3] = Axis::ALL.map(|a| deriv_u_real(l, a).into_matrix());
        comm = comm.max(u2.matmul(&u3).sub(&u3.matmul(&u2)).max_abs_diff(&u1));
        let [u1, u2, u3] = Axis::ALL.map(|a| deriv_u_complex(l, a).into_matrix());
        comm = comm.max(u2.matmul(&u3).sub(&u3.matmul(&u2)).max_abs_diff(&u1));
    }
    Outcome {
        pass: fd_r <= 1e-6 && fd_c <= 1e-6 && comm <= 1e-12,
        detail: format!("finite differences real {fd_r:.2e} complex {fd_c:.2e} (tol 1e-6); [u(e₂),u(e₃)]-u(e₁) {comm:.2e} (tol 1e-12)"),
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

// 6. Rotation recovery and correlation gradient.
fn criterion_6() -> Outcome {
    let truth = EulerAngles::new(PI / 6.0, PI / 3.0, PI / 4.0).unwrap();
    let f = synthetic_surface(16, &mut ChaCha8Rng::seed_from_u64(0));
    let g = rotate_coefficients(&f, &truth.to_matrix());
    let cfg = MatchConfig {
        step_size: 5e-3,
        tolerance: 1e-6,
        max_iters: 10_000,
        initial_guess: EulerAngles::new(0.3, 0.3, 0.3).unwrap(),
    };
    let out = match_shapes(&f, &g, &cfg).unwrap();
    let euler_err = out.euler.to_array().iter().zip(truth.to_array()).map(|(a, b)| angle_gap(*a, b)).fold(0.0, f64::max);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut grad_err = 0.0f64;
    let h = 1e-6;
    for _ in 0..50 {
        let b = rng.random_range(1..=8);
        let f = S2Coefficients::from_fn(b, |_, _| rng.random_range(-1.0..=1.0));
        let g = S2Coefficients::from_fn(b, |_, _| rng.random_range(-1.0..=1.0));
        let corr = Correlator::new(&f, &g).unwrap();
        let r = random_euler(&mut rng).to_matrix();
        let grad = corr.gradient(&r);
        for i in 0..3 {
            let step = Vector3::basis(i).scale(h);
            let fd = (corr.correlation(&(r * exp_so3(&step))) - corr.correlation(&(r * exp_so3(&step.scale(-1.0))))) / (2.0 * h);
            grad_err = grad_err.max((fd - grad.0[i]).abs());
        }
    }
    Outcome {
        pass: out.converged && euler_err <= 1e-3 && grad_err <= 1e-6,
        detail: format!(
            "converged={} after {} iterations, Euler error {euler_err:.2e} (tol 1e-3); gradient vs finite differences {grad_err:.2e} over 50 instances (tol 1e-6)",
            out.converged, out.iterations
        ),
    }
}

/// Double-double value `hi + lo`.
#[derive(Clone, Copy)]
struct Dd(f64, f64);

impl Dd {
    fn from(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn add(self, o: Dd) -> Dd {
        let s = self.0 + o.0;
        let bb = s - self.0;
        let err = (self.0 - (s - bb)) + (o.0 - bb);
        quick(s, err + self.1 + o.1)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.0 * o.0;
        let err = self.0.mul_add(o.0, -p);
        quick(p, err + self.0 * o.1 + self.1 * o.0)
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }

    fn sqrt(self) -> Dd {
        let y = self.0.sqrt();
        let yy = Dd::from(y).mul(Dd::from(y));
        let r = self.add(yy.neg());
        quick(y, r.0 / (2.0 * y))
    }

    fn powi(self, k: u32) -> Dd {
        (0..k).fold(Dd::from(1.0), |acc, _| acc.mul(self))
    }
}

fn quick(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd(s, b - (s - a))
}

fn binomial(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c as f64
}

/// Closed-form sum for `d^l_{mn}(β)` with exact binomials, `cos(β/2)` taken as
/// exact and everything else in double-double.
fn wigner_d_closed_form(l: i64, m: i64, n: i64, beta: f64) -> f64 {
    let c = (beta / 2.0).cos();
    let s = Dd::from(1.0).add(Dd::from(c).mul(Dd::from(c)).neg()).sqrt();
    let c = Dd::from(c);
    let mut sum = Dd::from(0.0);
    for k in 0..=(l + n) {
        let (b1, b2) = (binomial(l + n, k), binomial(l - n, l - m - k));
        if b1 == 0.0 || b2 == 0.0 {
            continue;
        }
        let (pc, ps) = (2 * l + n - m - 2 * k, m - n + 2 * k);
        if pc < 0 || ps < 0 {
            continue;
        }
        let sign = if (m - n + k).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let term = Dd::from(sign * b1).mul(Dd::from(b2)).mul(c.powi(pc as u32)).mul(s.powi(ps as u32));
        sum = sum.add(term);
    }
    let mut ratio = 1.0;
    // (l+m)!(l-m)!/((l+n)!(l-n)!)
    for i in 1..=(l + m) {
        ratio *= i as f64;
    }
    for i in 1..=(l - m) {
        ratio *= i as f64;
    }
    for i in 1..=(l + n) {
        ratio /= i as f64;
    }
    for i in 1..=(l - n) {
        ratio /= i as f64;
    }
    ratio.sqrt() * (sum.0 + sum.1)
}

// 7. Fast paths against direct evaluation.
fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut naive = 0.0f64;
    for b in 1..=4usize {
        let grid = make_grid(b).unwrap();
        let size = grid.size();
        let data: Vec<f64> = (0..size * size * size).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let samples = SO3Samples::new(b, data).unwrap();
        let fast = forward_real(&samples);
        let mut direct = SO3Coefficients::<f64>::zeros(b);
        for j1 in 0..size {
            for k in 0..size {
                for j2 in 0..size {
                    let e = grid.euler(j1, k, j2);
                    let w = grid.weights()[k] * samples.get(j1, k, j2);
                    for l in 0..b {
                        let u = u_via_complex(l, &e);
                        let li = l as i64;
                        for m in -li..=li {
                            for n in -li..=li {
                                let v = direct.get(l, m, n) + w * u.get((m + li) as usize, (n + li) as usize);
                                direct.set(l, m, n, v);
                            }
                        }
                    }
                }
            }
        }
        naive = naive.max(fast.max_abs_diff(&direct));
    }

    let mut wigner = 0.0f64;
    let mut betas: Vec<f64> = (0..8).map(|_| rng.random_range(0.0..PI)).collect();
    betas.extend([0.0, 1e-3, PI / 2.0, PI - 1e-3, PI]);
    for &beta in &betas {
        let stack = wigner_d_stack(21, beta).unwrap();
        for l in 0..=20i64 {
            for m in -l..=l {
                for n in -l..=l {
                    let want = wigner_d_closed_form(l, m, n, beta);
                    wigner = wigner.max((stack.get(l as usize, m, n) - want).abs());
                }
            }
        }
    }
    Outcome {
        pass: naive <= 1e-12 && wigner <= 1e-10,
        detail: format!("forward vs direct triple sum {naive:.2e} for B ≤ 4 (tol 1e-12); d-matrix recursion vs closed form {wigner:.2e} for l ≤ 20 (tol 1e-10)"),
    }
}

fn bits<T: Copy>(values: &[T], to_bits: impl Fn(T) -> Vec<u64>) -> Vec<u64> {
    values.iter().flat_map(|&v| to_bits(v)).collect()
}

// 8. Thread-count independence and parallel speedup.
fn criterion_8() -> Outcome {
    let b = 16;
    let real = random_so3_real(b, &mut ChaCha8Rng::seed_from_u64(80));
    let complex = random_so3_complex(b, &mut ChaCha8Rng::seed_from_u64(81));
    let s2 = synthetic_surface(b, &mut ChaCha8Rng::seed_from_u64(82));
    let fbits = |x: f64| vec![x.to_bits()];
    let cbits = |x: Complex64| vec![x.re.to_bits(), x.im.to_bits()];
    let mut runs = Vec::new();
    for threads in [1, 2, 4] {
        let fft = So3Fft::with_backends(b, RayonExecutor::new(threads).unwrap(), RustFftBackend::new()).unwrap();
        let samples = fft.inverse_real(&real).unwrap();
        let csamples = fft.inverse_complex(&complex).unwrap();
        let grid = fft.inverse_s2_real(&s2).unwrap();
        let mut all = bits(samples.as_slice(), fbits);
        all.extend(bits(fft.forward_real(&samples).unwrap().as_slice(), fbits));
        all.extend(bits(csamples.as_slice(), cbits));
        all.extend(bits(fft.forward_complex(&csamples).unwrap().as_slice(), cbits));
        all.extend(bits(grid.as_slice(), fbits));
        all.extend(bits(fft.forward_s2_real(&grid).unwrap().as_slice(), fbits));
        runs.push(all);
    }
    // the reference backend must agree with itself across executors too
    let direct: Vec<Vec<u64>> = [1, 4]
        .into_iter()
        .map(|t| {
            let fft = So3Fft::with_backends(4, RayonExecutor::new(t).unwrap(), DirectDft).unwrap();
            let c = random_so3_real(4, &mut ChaCha8Rng::seed_from_u64(83));
            bits(fft.forward_real(&fft.inverse_real(&c).unwrap()).unwrap().as_slice(), fbits)
        })
        .collect();
    let identical = runs.windows(2).all(|w| w[0] == w[1]) && direct[0] == direct[1];

    let rows = run_bench(&[64], &[1, 2, 4], 3, 0).unwrap();
    let at_least_one = rows.iter().all(|r| r.speedup >= 1.0);
    let four = rows.iter().find(|r| r.threads == 4).map(|r| r.speedup).unwrap_or(0.0);
    let speedups: Vec<String> = rows.iter().map(|r| format!("{}t {:.2}x", r.threads, r.speedup)).collect();
    Outcome {
        pass: identical && at_least_one && four >= 1.5,
        detail: format!(
            "bit-identical across 1/2/4 threads: {identical}; B=64 forward speedup {} (need ≥1.0 everywhere, ≥1.5 at 4 threads; {} hardware threads available)",
            speedups.join(", "),
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        ),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("round-trip error by bandwidth", criterion_1),
        ("real representation constructions agree", criterion_2),
        ("quadrature weight identity", criterion_3),
        ("Clebsch-Gordan identities", criterion_4),
        ("derivative representations", criterion_5),
        ("shape matching", criterion_6),
        ("fast paths match direct oracles", criterion_7),
        ("determinism and parallel speedup", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name}: {} [{:.1}s]", i + 1, out.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!out.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
