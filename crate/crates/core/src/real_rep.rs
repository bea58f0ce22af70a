//! Real orthogonal irreducible representations `U^l` of SO(3), built directly
//! from Euler angles as `U^l(α, β, γ) = X^l(α) W^l(β) X^l(γ)`, together with
//! the change of basis `T^l`, real spherical harmonics and the real
//! Lie-algebra representation.
//!
//! `X^l(α)` has at most two nonzeros per row (`cos mα` on the diagonal and
//! `-sin mα` on the anti-diagonal) and is only ever applied, never stored.
//! `W^l(β)` holds the kernel `Ψ^l_{m,n}(β)` on the two diagonal sign blocks.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;
#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::complex_rep::{sph_harm_Y, SphericalPoint};
use crate::dense::RepMatrix;
use crate::geometry::{Axis, EulerAngles};
use crate::special::parity;
use crate::wigner::{block_offset, wigner_d_stack, DegreeRecursion, WignerDStack};
use crate::{Error, Result};

/// Real `(2l+1)×(2l+1)` matrix indexed by orders `m, n ∈ [-l, l]`.
pub type RealRepMatrix = RepMatrix<f64>;

/// The unitary matrix taking complex to real spherical harmonics.
pub type TMatrix = RepMatrix<Complex64>;

const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-10;

/// `T^l`: `S^l = T^l Y^l`, nonzero only where `|m| = |n|`.
pub fn t_matrix(l: usize) -> TMatrix {
    RepMatrix::from_fn(l, |m, n| {
        if m.abs() != n.abs() {
            return Complex64::new(0.0, 0.0);
        }
        let sign = parity(m);
        match (m.signum(), m == n) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, true) => Complex64::new(sign * FRAC_1_SQRT_2, 0.0),
            (1, false) => Complex64::new(FRAC_1_SQRT_2, 0.0),
            (_, true) => Complex64::new(0.0, FRAC_1_SQRT_2),
            (_, false) => Complex64::new(0.0, -sign * FRAC_1_SQRT_2),
        }
    })
}

#[inline]
fn psi_from(d: impl Fn(i64, i64) -> f64, m: i64, n: i64) -> f64 {
    let (am, an) = (m.abs(), n.abs());
    match (m == 0, n == 0) {
        (true, true) => d(0, 0),
        (false, false) => parity(m - n) * d(am, an) + parity(m) * (m.signum() as f64) * d(am, -an),
        // exactly one order vanishes; sgn is never evaluated at 0
        _ => parity(m - n) * SQRT_2 * d(am, an),
    }
}

/// `Ψ^l_{m,n}(β)` for all `l < B` at one angle, stored like a
/// [`WignerDStack`].
#[derive(Debug, Clone, PartialEq)]
pub struct PsiKernel {
    bandwidth: usize,
    beta: f64,
    data: Vec<f64>,
}

impl PsiKernel {
    pub fn from_stack(stack: &WignerDStack) -> Self {
        let bandwidth = stack.bandwidth();
        let mut data = Vec::with_capacity(block_offset(bandwidth));
        for l in 0..bandwidth {
            let li = l as i64;
            for m in -li..=li {
                for n in -li..=li {
                    data.push(psi_from(|a, b| stack.get(l, a, b), m, n));
                }
            }
        }
        PsiKernel {
            bandwidth,
            beta: stack.beta(),
            data,
        }
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn block(&self, l: usize) -> &[f64] {
        assert!(l < self.bandwidth, "degree {l} outside bandwidth {}", self.bandwidth);
        &self.data[block_offset(l)..block_offset(l + 1)]
    }

    #[inline]
    pub fn get(&self, l: usize, m: i64, n: i64) -> f64 {
        let li = l as i64;
        debug_assert!(m.abs() <= li && n.abs() <= li);
        let dim = 2 * li + 1;
        self.block(l)[((m + li) * dim + n + li) as usize]
    }

    /// `W^l_{p,q}`: `Ψ^l_{p,q}` when `p` and `q` lie in the same sign class.
    #[inline]
    pub fn w(&self, l: usize, p: i64, q: i64) -> f64 {
        if (p >= 0) == (q >= 0) {
            self.get(l, p, q)
        } else {
            0.0
        }
    }
}

/// Kernel for degrees `l < bandwidth` at `beta`.
pub fn psi_kernel(bandwidth: usize, beta: f64) -> Result<PsiKernel> {
    Ok(PsiKernel::from_stack(&wigner_d_stack(bandwidth, beta)?))
}

/// `(Xv)_m = cos(mα) v_m - sin(mα) v_{-m}`.
pub fn apply_x(l: usize, angle: f64, v: &[f64], out: &mut [f64]) {
    let li = l as i64;
    for m in -li..=li {
        let (s, c) = (m as f64 * angle).sin_cos();
        out[(m + li) as usize] = c * v[(m + li) as usize] - s * v[(li - m) as usize];
    }
}

/// `(Xᵀv)_m = cos(mα) v_m + sin(mα) v_{-m}`.
pub fn apply_x_transpose(l: usize, angle: f64, v: &[f64], out: &mut [f64]) {
    let li = l as i64;
    for m in -li..=li {
        let (s, c) = (m as f64 * angle).sin_cos();
        out[(m + li) as usize] = c * v[(m + li) as usize] + s * v[(li - m) as usize];
    }
}

/// `out = W^l v` using the kernel block of degree `l`.
pub fn apply_w(kernel: &PsiKernel, l: usize, v: &[f64], out: &mut [f64]) {
    let li = l as i64;
    for p in -li..=li {
        let range = if p >= 0 { 0..=li } else { -li..=-1 };
        out[(p + li) as usize] = range.map(|q| kernel.get(l, p, q) * v[(q + li) as usize]).sum();
    }
}

/// `out = (W^l)ᵀ v`.
pub fn apply_w_transpose(kernel: &PsiKernel, l: usize, v: &[f64], out: &mut [f64]) {
    let li = l as i64;
    for q in -li..=li {
        let range = if q >= 0 { 0..=li } else { -li..=-1 };
        out[(q + li) as usize] = range.map(|p| kernel.get(l, p, q) * v[(p + li) as usize]).sum();
    }
}

/// `U^l(R)ᵀ v = X(γ)ᵀ W(β)ᵀ X(α)ᵀ v` without forming `U^l`.
pub fn apply_u_transpose(kernel: &PsiKernel, l: usize, alpha: f64, gamma: f64, v: &[f64]) -> Vec<f64> {
    let dim = 2 * l + 1;
    let (mut a, mut b) = (vec![0.0; dim], vec![0.0; dim]);
    apply_x_transpose(l, alpha, v, &mut a);
    apply_w_transpose(kernel, l, &a, &mut b);
    apply_x_transpose(l, gamma, &b, &mut a);
    a
}

/// `U^l(R) v = X(α) W(β) X(γ) v`.
pub fn apply_u(kernel: &PsiKernel, l: usize, alpha: f64, gamma: f64, v: &[f64]) -> Vec<f64> {
    let dim = 2 * l + 1;
    let (mut a, mut b) = (vec![0.0; dim], vec![0.0; dim]);
    apply_x(l, gamma, v, &mut a);
    apply_w(kernel, l, &a, &mut b);
    apply_x(l, alpha, &b, &mut a);
    a
}

/// `X^l_{m,p}(α)` for `p = m` and `p = -m`.
#[inline]
fn x_pair(m: i64, angle: f64) -> (f64, f64) {
    let (s, c) = (m as f64 * angle).sin_cos();
    (c, -s)
}

/// Degree-`l` block of `X(α) W(β) X(γ)` from a kernel that covers `l`.
#[allow(non_snake_case)]
pub fn real_U_from_kernel(kernel: &PsiKernel, l: usize, alpha: f64, gamma: f64) -> RealRepMatrix {
    RepMatrix::from_fn(l, |m, n| {
        let (xa, xb) = x_pair(m, alpha);
        // X_{q,n}(γ): q = n gives cos nγ, q = -n gives -sin(-nγ) = sin nγ
        let (yb, ya) = (n as f64 * gamma).sin_cos();
        let mut sum = xa * kernel.w(l, m, n) * ya;
        if n != 0 {
            sum += xa * kernel.w(l, m, -n) * yb;
        }
        if m != 0 {
            sum += xb * kernel.w(l, -m, n) * ya;
            if n != 0 {
                sum += xb * kernel.w(l, -m, -n) * yb;
            }
        }
        sum
    })
}

/// `U^l(R)` by the factored product, in real arithmetic only.
#[allow(non_snake_case)]
pub fn real_U(l: usize, e: &EulerAngles) -> RealRepMatrix {
    let kernel = psi_kernel(l + 1, e.beta()).expect("beta validated by EulerAngles");
    real_U_from_kernel(&kernel, l, e.alpha(), e.gamma())
}

/// `U^l(R)` for every `l < bandwidth`, sharing one kernel.
#[allow(non_snake_case)]
pub fn real_U_all(bandwidth: usize, e: &EulerAngles) -> Vec<RealRepMatrix> {
    let kernel = psi_kernel(bandwidth, e.beta()).expect("beta validated by EulerAngles");
    (0..bandwidth)
        .map(|l| real_U_from_kernel(&kernel, l, e.alpha(), e.gamma()))
        .collect()
}

/// `U^l(R)` by the entrywise sine/cosine form, one entry at a time.
#[allow(non_snake_case)]
pub fn real_U_entrywise(l: usize, e: &EulerAngles) -> RealRepMatrix {
    let kernel = psi_kernel(l + 1, e.beta()).expect("beta validated by EulerAngles");
    let (a, g) = (e.alpha(), e.gamma());
    RepMatrix::from_fn(l, |m, n| {
        let (sm, cm) = (m as f64 * a).sin_cos();
        let (sn, cn) = (n as f64 * g).sin_cos();
        let (plus, minus) = (kernel.get(l, m, n), kernel.get(l, -m, n));
        if (m >= 0) == (n >= 0) {
            -sm * sn * minus + cm * cn * plus
        } else {
            -sm * cn * minus + cm * sn * plus
        }
    })
}

/// Real spherical harmonics `S^l(x) = T^l Y^l(x)`.
///
/// Fails if the product carries an imaginary part above `1e-10`.
#[allow(non_snake_case)]
pub fn real_S(l: usize, p: &SphericalPoint) -> Result<Vec<f64>> {
    let t = t_matrix(l);
    let y = sph_harm_Y(l, p);
    let li = l as i64;
    let mut out = Vec::with_capacity(2 * l + 1);
    for m in -li..=li {
        // row m of T has nonzeros only in columns m and -m
        let mut s = t.get(m, m) * y[(m + li) as usize];
        if m != 0 {
            s += t.get(m, -m) * y[(li - m) as usize];
        }
        if s.im.abs() > IMAGINARY_RESIDUE_LIMIT {
            return Err(Error::ImaginaryResidue(s.im));
        }
        out.push(s.re);
    }
    Ok(out)
}

/// Real spherical harmonics of every degree `l < bandwidth`, concatenated
/// (degree `l` starts at index `l²`).
///
/// Uses `S^l_m(θ, φ) = sqrt((2l+1)/(4π)) U^l_{m,0}(φ, θ, 0)`, i.e.
/// `√2 (-1)^m d^l_{|m|,0}(θ)` times `cos mφ` (`m > 0`) or `sin |m|φ` (`m < 0`).
pub fn real_sph_harm_all(bandwidth: usize, p: &SphericalPoint) -> Vec<f64> {
    let mut out = vec![0.0; bandwidth * bandwidth];
    let theta = [p.theta()];
    for am in 0..bandwidth as i64 {
        let (s, c) = (am as f64 * p.phi()).sin_cos();
        let mut rec = DegreeRecursion::new(am, 0, &theta);
        loop {
            let l = rec.degree();
            let norm = ((2 * l + 1) as f64 / (4.0 * PI)).sqrt();
            let d = rec.values()[0];
            let base = l * l + l;
            if am == 0 {
                out[base] = norm * d;
            } else {
                let v = norm * SQRT_2 * parity(am) * d;
                out[base + am as usize] = v * c;
                out[base - am as usize] = v * s;
            }
            if l + 1 >= bandwidth {
                break;
            }
            rec.advance();
        }
    }
    out
}

/// Real Lie-algebra representation `u^l(e_i) = d/dε U^l(exp(ε ê_i))|₀`.
///
/// Antisymmetric; `[u(e₂), u(e₃)] = u(e₁)`.
pub fn deriv_u_real(l: usize, axis: Axis) -> RealRepMatrix {
    let li = l as i64;
    let lf = l as f64;
    // sqrt((l+|m|)(l-|m|+1)) and sqrt((l-|m|)(l+|m|+1))
    let lower = |m: i64| {
        let a = m.abs() as f64;
        ((lf + a) * (lf - a + 1.0)).sqrt()
    };
    let upper = |m: i64| {
        let a = m.abs() as f64;
        ((lf - a) * (lf + a + 1.0)).sqrt()
    };
    let centre = (lf * (lf + 1.0) / 2.0).sqrt();
    RepMatrix::from_fn(l, |m, n| match axis {
        Axis::E3 => {
            if m == -n && m != 0 {
                -(m as f64)
            } else {
                0.0
            }
        }
        Axis::E2 => {
            if (m >= 2 && n == m - 1) || (m <= -2 && n == m + 1) {
                0.5 * lower(m)
            } else if ((1..li).contains(&m) && n == m + 1) || ((-li + 1..=-1).contains(&m) && n == m - 1) {
                -0.5 * upper(m)
            } else if m == 1 && n == 0 {
                centre
            } else if m == 0 && n == 1 {
                -centre
            } else {
                0.0
            }
        }
        Axis::E1 => {
            let s = (m + n) as f64;
            if (m >= 2 && n == -m + 1) || (m <= -2 && n == -m - 1) {
                0.5 * s * lower(m)
            } else if ((1..li).contains(&m) && n == -m - 1) || ((-li + 1..=-1).contains(&m) && n == -m + 1) {
                -0.5 * s * upper(m)
            } else if m == -1 && n == 0 {
                -centre
            } else if m == 0 && n == -1 {
                centre
            } else {
                0.0
            }
        }
    })
}
