//! Complex irreducible unitary representations of SO(3) (Wigner D-matrices),
//! complex spherical harmonics and the complex Lie-algebra representation.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::dense::RepMatrix;
use crate::geometry::{check_polar, matrix_to_euler, Axis, EulerAngles, RotationMatrix, Vector3};
use crate::special::{ln_factorial, parity};
use crate::wigner::wigner_d_stack;
use crate::{Error, Result};

/// Complex `(2l+1)×(2l+1)` matrix indexed by orders `m, n ∈ [-l, l]`.
pub type ComplexRepMatrix = RepMatrix<Complex64>;

/// A point on S² given by co-latitude `theta ∈ [0, π]` and longitude
/// `phi ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint {
    theta: f64,
    phi: f64,
}

impl SphericalPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        let theta = check_polar("theta", theta)?;
        let phi = phi - TAU * (phi / TAU).floor();
        Ok(SphericalPoint {
            theta,
            phi: if phi >= TAU { 0.0 } else { phi },
        })
    }

    /// Point in the direction of a nonzero vector.
    pub fn from_vector(x: &Vector3) -> Self {
        let [a, b, c] = x.0;
        let theta = (a * a + b * b).sqrt().atan2(c);
        let phi = b.atan2(a);
        SphericalPoint {
            theta: theta.clamp(0.0, PI),
            phi: if phi < 0.0 { phi + TAU } else { phi },
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `x(θ, φ) = (cos φ sin θ, sin φ sin θ, cos θ)`.
    pub fn to_vector(&self) -> Vector3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vector3::new(cp * st, sp * st, ct)
    }
}

/// `D^l_{m,n}(R(α,β,γ)) = e^{-imα} d^l_{m,n}(β) e^{-inγ}`.
#[allow(non_snake_case)]
pub fn wigner_D(l: usize, e: &EulerAngles) -> ComplexRepMatrix {
    let stack = wigner_d_stack(l + 1, e.beta()).expect("beta validated by EulerAngles");
    RepMatrix::from_fn(l, |m, n| {
        let phase = -(m as f64) * e.alpha() - (n as f64) * e.gamma();
        Complex64::from_polar(stack.get(l, m, n), phase)
    })
}

/// [`wigner_D`] for a rotation given as a matrix.
#[allow(non_snake_case)]
pub fn wigner_D_matrix(l: usize, r: &RotationMatrix) -> ComplexRepMatrix {
    wigner_D(l, &matrix_to_euler(r))
}

/// Associated Legendre function `P^m_l(t)` for `0 ≤ m ≤ l`, including the
/// Condon-Shortley phase `(-1)^m`.
///
/// Unnormalized values grow like `(2m-1)!!`; prefer [`sph_harm_Y`] beyond
/// `l ≈ 150`.
pub fn assoc_legendre(l: usize, m: usize, t: f64) -> Result<f64> {
    if m > l {
        return Err(Error::IndexOutOfRange {
            what: "m",
            index: m as i64,
            bound: l as i64,
        });
    }
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::LegendreDomain(t));
    }
    let s = ((1.0 - t) * (1.0 + t)).sqrt();
    let mut pmm = 1.0;
    for i in 0..m {
        pmm *= -((2 * i + 1) as f64) * s;
    }
    if l == m {
        return Ok(pmm);
    }
    let mut prev = pmm;
    let mut cur = t * (2 * m + 1) as f64 * pmm;
    for ll in (m + 2)..=l {
        let next = (t * (2 * ll - 1) as f64 * cur - (ll + m - 1) as f64 * prev) / (ll - m) as f64;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `sqrt((2l+1)/(4π) (l-m)!/(l+m)!) P^m_l(t)` for `0 ≤ m ≤ l`, by the
/// normalized recursion (no overflow at high degree).
fn normalized_legendre(l: usize, m: usize, t: f64) -> f64 {
    let s = ((1.0 - t) * (1.0 + t)).sqrt();
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for i in 1..=m {
        pmm *= -((2 * i + 1) as f64 / (2 * i) as f64).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = ((2 * m + 3) as f64).sqrt() * t * pmm;
    for ll in (m + 2)..=l {
        let (lf, mf) = (ll as f64, m as f64);
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
        let next = a * (t * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Complex spherical harmonics `Y^l_m(θ, φ)` for `m = -l..=l`:
///
/// `Y^l_m = e^{imφ} sqrt((2l+1)/(4π) (l-m)!/(l+m)!) P^m_l(cos θ)`,
///
/// with `P^{-m}_l = (-1)^m (l-m)!/(l+m)! P^m_l`. Under the normalized measure
/// on S² these have squared norm `1/(4π)`.
#[allow(non_snake_case)]
pub fn sph_harm_Y(l: usize, p: &SphericalPoint) -> Vec<Complex64> {
    let t = p.theta.cos();
    let li = l as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * l + 1];
    for m in 0..=l {
        let value = normalized_legendre(l, m, t);
        let y = Complex64::from_polar(value, m as f64 * p.phi);
        out[(li + m as i64) as usize] = y;
        if m > 0 {
            // Y^l_{-m} = (-1)^m conj(Y^l_m)
            out[(li - m as i64) as usize] = y.conj() * parity(m as i64);
        }
    }
    out
}

/// Reference evaluation of one harmonic straight from the unnormalized
/// Legendre function and log-factorials, for moderate `l`.
#[allow(non_snake_case)]
pub fn sph_harm_Y_direct(l: usize, m: i64, p: &SphericalPoint) -> Result<Complex64> {
    let li = l as i64;
    if m.abs() > li {
        return Err(Error::IndexOutOfRange {
            what: "m",
            index: m,
            bound: li,
        });
    }
    let am = m.unsigned_abs() as usize;
    let plm = assoc_legendre(l, am, p.theta.cos())?;
    let log_ratio = ln_factorial(li - m) - ln_factorial(li + m);
    let mut legendre = plm;
    if m < 0 {
        legendre *= parity(m) * libm::exp(ln_factorial(li + m) - ln_factorial(li - m));
    }
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * libm::exp(log_ratio)).sqrt();
    Ok(Complex64::from_polar(norm * legendre, m as f64 * p.phi))
}

/// Complex Lie-algebra representation `u^l(e_i) = d/dε D^l(exp(ε ê_i))|₀`.
pub fn deriv_u_complex(l: usize, axis: Axis) -> ComplexRepMatrix {
    let lf = l as f64;
    let mut u = RepMatrix::zeros(l);
    let li = l as i64;
    for m in -li..=li {
        let mf = m as f64;
        // sqrt((l+m)(l-m+1)) couples n = m-1; sqrt((l-m)(l+m+1)) couples n = m+1
        let down = ((lf + mf) * (lf - mf + 1.0)).sqrt();
        let up = ((lf - mf) * (lf + mf + 1.0)).sqrt();
        match axis {
            Axis::E3 => u.set(m, m, Complex64::new(0.0, -mf)),
            Axis::E2 => {
                if m > -li {
                    u.set(m, m - 1, Complex64::new(-0.5 * down, 0.0));
                }
                if m < li {
                    u.set(m, m + 1, Complex64::new(0.5 * up, 0.0));
                }
            }
            Axis::E1 => {
                if m > -li {
                    u.set(m, m - 1, Complex64::new(0.0, -0.5 * down));
                }
                if m < li {
                    u.set(m, m + 1, Complex64::new(0.0, -0.5 * up));
                }
            }
        }
    }
    u
}

/// `Y^l(Rᵀx)` evaluated directly and through `Σ_{m'} Y^l_{m'}(x) D^l_{m',n}(R)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotatedHarmonics {
    pub direct: Vec<Complex64>,
    pub via_representation: Vec<Complex64>,
}

impl RotatedHarmonics {
    pub fn max_discrepancy(&self) -> f64 {
        self.direct
            .iter()
            .zip(&self.via_representation)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[allow(non_snake_case)]
pub fn rotate_Y(l: usize, r: &RotationMatrix, p: &SphericalPoint) -> RotatedHarmonics {
    let rotated = SphericalPoint::from_vector(&r.transpose().apply(&p.to_vector()));
    let direct = sph_harm_Y(l, &rotated);
    let y = sph_harm_Y(l, p);
    let d = wigner_D_matrix(l, r);
    let li = l as i64;
    let via_representation = (-li..=li)
        .map(|n| {
            (-li..=li)
                .map(|mp| y[(mp + li) as usize] * d.get(mp, n))
                .sum()
        })
        .collect();
    RotatedHarmonics {
        direct,
        via_representation,
    }
}
