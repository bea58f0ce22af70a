//! Standard-library companion to `so3ft-core`.
//!
//! - [`backends`]: a rayon thread-pool [`Executor`](so3ft_core::transforms::Executor)
//!   and a `rustfft` [`DftBackend`](so3ft_core::transforms::DftBackend).
//! - [`formats`]: text files for coefficients and samples.
//! - [`ingest`]: resampling of raw latitude/longitude grids.
//! - [`synthetic`]: seeded test data.
//! - [`bench`]: transform timings across thread counts.
//! - [`cli`]: the `so3ft` command.

pub mod backends;
pub mod bench;
pub mod cli;
pub mod formats;
pub mod ingest;
pub mod synthetic;

pub use so3ft_core;
