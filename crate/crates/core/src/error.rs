use core::fmt;

/// Errors reported by the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The second Euler angle (or a co-latitude) lies outside `[0, π]`.
    AngleOutOfRange { name: &'static str, value: f64 },
    /// A degree/order index is outside its admissible range.
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        bound: i64,
    },
    /// Clebsch-Gordan indices violate the triangle or order constraints.
    InvalidCoupling {
        l: i64,
        m: i64,
        l1: i64,
        m1: i64,
        l2: i64,
        m2: i64,
    },
    /// Argument of an associated Legendre function outside `[-1, 1]`.
    LegendreDomain(f64),
    /// `vee` was given a matrix that is not skew-symmetric.
    NotSkewSymmetric(f64),
    /// Bandwidth must be at least one.
    InvalidBandwidth(usize),
    /// Two operands carry different bandwidths.
    BandwidthMismatch { left: usize, right: usize },
    /// A buffer does not have the length implied by its bandwidth.
    ShapeMismatch { expected: usize, found: usize },
    /// A quantity expected to be real carried an imaginary part.
    ImaginaryResidue(f64),
    /// A matching configuration parameter is not positive.
    InvalidConfig(&'static str),
    /// A sampled function failed at a grid point.
    Sampling {
        j1: usize,
        k: usize,
        j2: usize,
        reason: alloc::string::String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AngleOutOfRange { name, value } => {
                write!(f, "{name} = {value} is outside [0, pi]")
            }
            Error::IndexOutOfRange { what, index, bound } => {
                write!(f, "{what} index {index} outside admissible range (bound {bound})")
            }
            Error::InvalidCoupling { l, m, l1, m1, l2, m2 } => write!(
                f,
                "invalid coupling (l={l}, m={m}) from (l1={l1}, m1={m1}) x (l2={l2}, m2={m2})"
            ),
            Error::LegendreDomain(t) => write!(f, "Legendre argument {t} outside [-1, 1]"),
            Error::NotSkewSymmetric(s) => {
                write!(f, "matrix is not skew-symmetric (symmetric part {s:e})")
            }
            Error::InvalidBandwidth(b) => write!(f, "bandwidth must be positive, got {b}"),
            Error::BandwidthMismatch { left, right } => {
                write!(f, "bandwidth mismatch: {left} vs {right}")
            }
            Error::ShapeMismatch { expected, found } => {
                write!(f, "expected {expected} values, found {found}")
            }
            Error::ImaginaryResidue(r) => write!(f, "imaginary residue {r:e} too large"),
            Error::InvalidConfig(what) => write!(f, "{what} must be positive"),
            Error::Sampling { j1, k, j2, reason } => {
                write!(f, "sampling failed at grid index ({j1}, {k}, {j2}): {reason}")
            }
        }
    }
}

impl core::error::Error for Error {}
