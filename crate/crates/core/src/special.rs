//! Small numeric helpers shared across modules.

/// `ln(n!)`.
pub(crate) fn ln_factorial(n: i64) -> f64 {
    debug_assert!(n >= 0);
    libm::lgamma(n as f64 + 1.0)
}

/// `(-1)^k` for any integer `k`.
#[inline]
pub(crate) fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `base^exp` with the convention `0^0 = 1`, evaluated in log space so that a
/// huge prefactor `exp(log_prefactor)` does not overflow before being damped.
#[inline]
pub(crate) fn scaled_powers(log_prefactor: f64, factors: &[(f64, i64)]) -> f64 {
    let mut log = log_prefactor;
    let mut sign = 1.0;
    for &(base, exp) in factors {
        if exp == 0 {
            continue;
        }
        if base == 0.0 {
            return 0.0;
        }
        if base < 0.0 && exp % 2 != 0 {
            sign = -sign;
        }
        log += exp as f64 * libm::log(libm::fabs(base));
    }
    sign * libm::exp(log)
}
