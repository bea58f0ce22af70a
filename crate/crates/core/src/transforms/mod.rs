//! Exact-sampling Fourier transforms on SO(3) and S².
//!
//! [`So3Fft`] owns a [`SampleGrid`] together with an [`Executor`] and a
//! [`DftBackend`]. The free functions use the sequential executor and the
//! direct DFT.
//!
//! Conventions:
//!
//! ```text
//! SO(3), real:    f(R) = Σ_{l<B} Σ_{m,n} (2l+1) F^l_{m,n} U^l_{m,n}(R)
//! SO(3), complex: f(R) = Σ_{l<B} Σ_{m,n} (2l+1) F^l_{m,n} D^l_{m,n}(R)
//! S²:             f(x) = Σ_{l<B} Σ_m F^l_m S^l_m(x)
//! ```
//!
//! Results do not depend on the executor: every reduction runs inside a single
//! task in a fixed order.

mod backend;
mod coefficients;
mod grid;
mod s2;
mod so3;

pub use backend::{DftBackend, DirectDft, Executor, Sequential};
pub use coefficients::{sample_function, S2Coefficients, S2Samples, SO3Coefficients, SO3Samples};
pub use grid::{make_grid, SampleGrid};

use num_complex::Complex64;

use crate::complex_rep::{wigner_D, SphericalPoint};
use crate::geometry::EulerAngles;
use crate::real_rep::{psi_kernel, real_U_from_kernel, real_sph_harm_all};
use crate::{Error, Result};

/// Transform engine for one bandwidth.
#[derive(Debug, Clone)]
pub struct So3Fft<E = Sequential, D = DirectDft> {
    grid: SampleGrid,
    exec: E,
    dft: D,
}

impl So3Fft {
    pub fn new(bandwidth: usize) -> Result<Self> {
        Self::with_backends(bandwidth, Sequential, DirectDft)
    }
}

impl<E: Executor, D: DftBackend> So3Fft<E, D> {
    pub fn with_backends(bandwidth: usize, exec: E, dft: D) -> Result<Self> {
        Ok(So3Fft {
            grid: make_grid(bandwidth)?,
            exec,
            dft,
        })
    }

    pub fn grid(&self) -> &SampleGrid {
        &self.grid
    }

    pub fn bandwidth(&self) -> usize {
        self.grid.bandwidth()
    }

    pub fn executor(&self) -> &E {
        &self.exec
    }

    fn check(&self, bandwidth: usize) -> Result<()> {
        if bandwidth != self.bandwidth() {
            return Err(Error::BandwidthMismatch {
                left: self.bandwidth(),
                right: bandwidth,
            });
        }
        Ok(())
    }

    /// Coefficients of a real function from its grid samples.
    pub fn forward_real(&self, samples: &SO3Samples<f64>) -> Result<SO3Coefficients<f64>> {
        self.check(samples.bandwidth())?;
        Ok(so3::forward_real(&self.grid, samples, &self.exec, &self.dft))
    }

    /// Grid samples of the real function with the given coefficients.
    pub fn inverse_real(&self, coeffs: &SO3Coefficients<f64>) -> Result<SO3Samples<f64>> {
        self.check(coeffs.bandwidth())?;
        Ok(so3::inverse_real(&self.grid, coeffs, &self.exec, &self.dft))
    }

    pub fn forward_complex(&self, samples: &SO3Samples<Complex64>) -> Result<SO3Coefficients<Complex64>> {
        self.check(samples.bandwidth())?;
        Ok(so3::forward_complex(&self.grid, samples, &self.exec, &self.dft))
    }

    pub fn inverse_complex(&self, coeffs: &SO3Coefficients<Complex64>) -> Result<SO3Samples<Complex64>> {
        self.check(coeffs.bandwidth())?;
        Ok(so3::inverse_complex(&self.grid, coeffs, &self.exec, &self.dft))
    }

    pub fn forward_s2_real(&self, samples: &S2Samples<f64>) -> Result<S2Coefficients<f64>> {
        self.check(samples.bandwidth())?;
        Ok(s2::forward_s2_real(&self.grid, samples, &self.exec, &self.dft))
    }

    pub fn inverse_s2_real(&self, coeffs: &S2Coefficients<f64>) -> Result<S2Samples<f64>> {
        self.check(coeffs.bandwidth())?;
        Ok(s2::inverse_s2_real(&self.grid, coeffs, &self.exec, &self.dft))
    }
}

fn engine(bandwidth: usize) -> So3Fft {
    So3Fft::new(bandwidth).expect("sample sets always have B ≥ 1")
}

pub fn forward_real(samples: &SO3Samples<f64>) -> SO3Coefficients<f64> {
    let e = engine(samples.bandwidth());
    so3::forward_real(&e.grid, samples, &e.exec, &e.dft)
}

pub fn inverse_real(coeffs: &SO3Coefficients<f64>) -> Result<SO3Samples<f64>> {
    So3Fft::new(coeffs.bandwidth())?.inverse_real(coeffs)
}

pub fn forward_complex(samples: &SO3Samples<Complex64>) -> SO3Coefficients<Complex64> {
    let e = engine(samples.bandwidth());
    so3::forward_complex(&e.grid, samples, &e.exec, &e.dft)
}

pub fn inverse_complex(coeffs: &SO3Coefficients<Complex64>) -> Result<SO3Samples<Complex64>> {
    So3Fft::new(coeffs.bandwidth())?.inverse_complex(coeffs)
}

pub fn forward_s2_real(samples: &S2Samples<f64>) -> S2Coefficients<f64> {
    let e = engine(samples.bandwidth());
    s2::forward_s2_real(&e.grid, samples, &e.exec, &e.dft)
}

pub fn inverse_s2_real(coeffs: &S2Coefficients<f64>) -> Result<S2Samples<f64>> {
    So3Fft::new(coeffs.bandwidth())?.inverse_s2_real(coeffs)
}

/// `f(R)` at one rotation from real SO(3) coefficients.
pub fn evaluate_real(coeffs: &SO3Coefficients<f64>, e: &EulerAngles) -> f64 {
    let bw = coeffs.bandwidth();
    if bw == 0 {
        return 0.0;
    }
    let kernel = psi_kernel(bw, e.beta()).expect("beta validated by EulerAngles");
    (0..bw)
        .map(|l| {
            let u = real_U_from_kernel(&kernel, l, e.alpha(), e.gamma());
            let li = l as i64;
            let mut acc = 0.0;
            for m in -li..=li {
                for n in -li..=li {
                    acc += coeffs.get(l, m, n) * u.get(m, n);
                }
            }
            (2 * l + 1) as f64 * acc
        })
        .sum()
}

/// `f(R)` at one rotation from complex SO(3) coefficients.
pub fn evaluate_complex(coeffs: &SO3Coefficients<Complex64>, e: &EulerAngles) -> Complex64 {
    (0..coeffs.bandwidth())
        .map(|l| {
            let d = wigner_D(l, e);
            let li = l as i64;
            let mut acc = Complex64::new(0.0, 0.0);
            for m in -li..=li {
                for n in -li..=li {
                    acc += coeffs.get(l, m, n) * d.get(m, n);
                }
            }
            acc * (2 * l + 1) as f64
        })
        .sum()
}

/// `f(x)` at one point from real S² coefficients.
pub fn evaluate_s2_real(coeffs: &S2Coefficients<f64>, p: &SphericalPoint) -> f64 {
    let s = real_sph_harm_all(coeffs.bandwidth(), p);
    s.iter().zip(coeffs.as_slice()).map(|(a, b)| a * b).sum()
}
