//! Harmonic analysis on the rotation group SO(3) and the unit sphere.
//!
//! The crate is `no_std` (it needs `alloc`) and covers:
//!
//! - [`geometry`]: 3-2-3 Euler angles, rotation matrices, the hat/vee maps and
//!   the exponential map.
//! - [`wigner`]: Wigner d-matrices by a stable three-term degree recursion.
//! - [`complex_rep`]: Wigner D-matrices, complex spherical harmonics and the
//!   complex Lie-algebra representation.
//! - [`real_rep`]: real orthogonal irreducible representations `U^l` built
//!   directly from Euler angles, real spherical harmonics and their derivatives.
//! - [`transforms`]: the exact equiangular sampling grid and fast forward and
//!   inverse transforms on SO(3) and S².
//! - [`clebsch_gordan`]: complex and real Clebsch-Gordan matrices and product
//!   expansions.
//! - [`shape_match`]: spherical correlation, its gradient and a gradient-ascent
//!   rotation matcher.
//!
//! Parallelism and the one-dimensional DFT are pluggable through
//! [`transforms::Executor`] and [`transforms::DftBackend`]; the `so3ft` crate
//! provides thread-pool and FFT-library backed implementations.
#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod clebsch_gordan;
pub mod complex_rep;
mod dense;
mod error;
pub mod geometry;
pub mod real_rep;
pub mod shape_match;
mod special;
pub mod transforms;
pub mod wigner;

pub use dense::{Matrix, RepMatrix, Scalar};
pub use error::Error;
pub use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;
