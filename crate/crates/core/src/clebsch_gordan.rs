//! Clebsch-Gordan coefficients for complex and real harmonics.
//!
//! Both flavors are packed into a square matrix of size `(2l₁+1)(2l₂+1)`
//! with zero-based indices
//!
//! ```text
//! row    = (l₁ + m₁)(2l₂ + 1) + l₂ + m₂
//! column = l² - (l₂ - l₁)² + l + m
//! ```
//!
//! so that `D^{l₁} ⊗ D^{l₂} = C [⊕_l D^l] Cᵀ` and
//! `U^{l₁} ⊗ U^{l₂} = c [⊕_l U^l] c̄ᵀ`.
//!
//! Coefficients for complex harmonics are real. Those for real harmonics are
//! complex in general, but every product `c^{l,m} c̄^{l,n}` appearing in the
//! expansion of `U^{l₁}_{m₁,n₁} U^{l₂}_{m₂,n₂}` is real.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::dense::{Matrix, Scalar};
use crate::real_rep::t_matrix;
use crate::special::{ln_factorial, parity};
use crate::{Error, Result};

/// Real-expansion products below this magnitude are treated as zero.
const TERM_THRESHOLD: f64 = 1e-14;
const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-12;

/// Packed Clebsch-Gordan matrix for degrees `(l₁, l₂)`.
///
/// `CGMatrix<f64>` holds the coefficients for complex harmonics,
/// `CGMatrix<Complex64>` those for real harmonics.
#[derive(Debug, Clone, PartialEq)]
pub struct CGMatrix<T> {
    l1: usize,
    l2: usize,
    matrix: Matrix<T>,
}

impl<T: Scalar> CGMatrix<T> {
    pub fn l1(&self) -> usize {
        self.l1
    }

    pub fn l2(&self) -> usize {
        self.l2
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn row_index(&self, m1: i64, m2: i64) -> usize {
        ((self.l1 as i64 + m1) * (2 * self.l2 as i64 + 1) + self.l2 as i64 + m2) as usize
    }

    pub fn column_index(&self, l: usize, m: i64) -> usize {
        let d = self.l2 as i64 - self.l1 as i64;
        let li = l as i64;
        (li * li - d * d + li + m) as usize
    }

    /// Coefficient `C^{l,m}_{l₁,m₁,l₂,m₂}`; zero outside the valid range.
    pub fn get(&self, l: usize, m: i64, m1: i64, m2: i64) -> T {
        if !in_range(l, m, self.l1, m1, self.l2, m2) {
            return T::zero();
        }
        self.matrix.get(self.row_index(m1, m2), self.column_index(l, m))
    }

    fn set(&mut self, l: usize, m: i64, m1: i64, m2: i64, v: T) {
        let (r, c) = (self.row_index(m1, m2), self.column_index(l, m));
        self.matrix.set(r, c, v);
    }
}

fn in_range(l: usize, m: i64, l1: usize, m1: i64, l2: usize, m2: i64) -> bool {
    m.unsigned_abs() as usize <= l
        && m1.unsigned_abs() as usize <= l1
        && m2.unsigned_abs() as usize <= l2
        && l1.abs_diff(l2) <= l
        && l <= l1 + l2
}

fn coupling_error(l: usize, m: i64, l1: usize, m1: i64, l2: usize, m2: i64) -> Error {
    Error::InvalidCoupling {
        l: l as i64,
        m,
        l1: l1 as i64,
        m1,
        l2: l2 as i64,
        m2,
    }
}

/// All coefficients `C^{l,M}_{l₁,m₁,l₂,M-m₁}` for one `l`, indexed
/// `[l - M][m₁ + l₁]`. Lowers from the stretched state `M = l` to `M = 0`
/// and fills negative `M` by the reflection `m₁, m₂ → -m₁, -m₂`.
fn coupled_block(l1: usize, l2: usize, l: usize) -> Vec<Vec<f64>> {
    let (j1, j2, j) = (l1 as i64, l2 as i64, l as i64);
    let width = 2 * l1 + 1;
    let mut out = Vec::with_capacity(2 * l + 1);

    let log_top = 0.5
        * (ln_factorial(2 * j + 1) + ln_factorial(j1 + j2 - j)
            - ln_factorial(j1 + j2 + j + 1)
            - ln_factorial(j1 - j2 + j)
            - ln_factorial(-j1 + j2 + j));
    let mut state = vec![0.0; width];
    for m1 in -j1..=j1 {
        let m2 = j - m1;
        if m2.abs() > j2 {
            continue;
        }
        let log_tail = 0.5 * (ln_factorial(j1 + m1) + ln_factorial(j2 + m2) - ln_factorial(j1 - m1) - ln_factorial(j2 - m2));
        state[(m1 + j1) as usize] = parity(j1 - m1) * libm::exp(log_top + log_tail);
    }
    normalize(&mut state);
    out.push(state.clone());

    for big_m in (1..=j).rev() {
        // sqrt((J+M)(J-M+1)) C^{J,M-1}_{m₁,m₂} =
        //   sqrt((j₁-m₁)(j₁+m₁+1)) C^{J,M}_{m₁+1,m₂} + sqrt((j₂-m₂)(j₂+m₂+1)) C^{J,M}_{m₁,m₂+1}
        let lower = (((j + big_m) * (j - big_m + 1)) as f64).sqrt();
        let mut next = vec![0.0; width];
        for m1 in -j1..=j1 {
            let m2 = big_m - 1 - m1;
            if m2.abs() > j2 {
                continue;
            }
            let mut v = 0.0;
            if m1 < j1 {
                v += (((j1 - m1) * (j1 + m1 + 1)) as f64).sqrt() * state[(m1 + 1 + j1) as usize];
            }
            if m2 < j2 {
                v += (((j2 - m2) * (j2 + m2 + 1)) as f64).sqrt() * state[(m1 + j1) as usize];
            }
            next[(m1 + j1) as usize] = v / lower;
        }
        normalize(&mut next);
        out.push(next.clone());
        state = next;
    }
    let sign = parity(j1 + j2 - j);
    for big_m in 1..=j {
        let mirror = &out[(j - big_m) as usize];
        let reflected: Vec<f64> = (0..width).map(|i| sign * mirror[width - 1 - i]).collect();
        out.push(reflected);
    }
    out
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

fn build_complex(l1: usize, l2: usize) -> CGMatrix<f64> {
    let dim = (2 * l1 + 1) * (2 * l2 + 1);
    let mut cg = CGMatrix {
        l1,
        l2,
        matrix: Matrix::zeros(dim, dim),
    };
    let j1 = l1 as i64;
    for l in l1.abs_diff(l2)..=l1 + l2 {
        for (i, column) in coupled_block(l1, l2, l).iter().enumerate() {
            let m = l as i64 - i as i64;
            for m1 in -j1..=j1 {
                let m2 = m - m1;
                if m2.unsigned_abs() as usize <= l2 {
                    cg.set(l, m, m1, m2, column[(m1 + j1) as usize]);
                }
            }
        }
    }
    cg
}

fn sign_class(x: i64) -> u8 {
    match x.signum() {
        0 => 0,
        1 => 1,
        _ => 2,
    }
}

/// Ratios of `c^{l,m}` to the complex coefficient for the four candidate
/// orders `m₁+m₂, -m₁-m₂, m₁-m₂, -m₁+m₂`, keyed by the signs of
/// `(m₁, m₂, m₁+m₂, m₁-m₂)`.
fn table_ratios(l1: usize, m1: i64, l2: usize, m2: i64, l: usize) -> [Complex64; 4] {
    let e = parity(l1 as i64 + l2 as i64 - l as i64);
    let (eta, zeta) = (e + 1.0, e - 1.0);
    let (p1, p2) = (parity(m1), parity(m2));
    let r8 = 0.5 * FRAC_1_SQRT_2;
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    let key = (sign_class(m1), sign_class(m2), sign_class(m1 + m2), sign_class(m1 - m2));
    // sign classes: 0 → 0, 1 → +, 2 → −
    match key {
        (0, 0, 0, 0) => [re(1.0); 4],
        (1, 0, 1, 1) | (2, 0, 2, 2) => [re(eta / 2.0), im(zeta / 2.0), re(eta / 2.0), im(zeta / 2.0)],
        (1, 1, 1, 1) => [re(r8 * eta), im(r8 * zeta), re(p2 * r8 * eta), im(p2 * r8 * zeta)],
        (1, 1, 1, 0) => [re(r8 * eta), im(r8 * zeta), re(p1 * eta / 2.0), re(p1 * eta / 2.0)],
        (1, 1, 1, 2) => [re(r8 * eta), im(r8 * zeta), im(-p1 * r8 * zeta), re(p1 * r8 * eta)],
        (0, 1, 1, 2) | (0, 2, 2, 1) => [re(eta / 2.0), im(zeta / 2.0), im(-zeta / 2.0), re(eta / 2.0)],
        (2, 1, 1, 2) => [im(p1 * r8 * zeta), re(-p1 * r8 * eta), re(r8 * eta), im(r8 * zeta)],
        (2, 1, 0, 2) => [im(p1 * zeta / 2.0), im(p1 * zeta / 2.0), re(r8 * eta), im(r8 * zeta)],
        (2, 1, 2, 2) => [re(p2 * r8 * eta), im(p2 * r8 * zeta), re(r8 * eta), im(r8 * zeta)],
        (2, 2, 2, 2) => [im(r8 * zeta), re(-r8 * eta), im(-p2 * r8 * zeta), re(p2 * r8 * eta)],
        (2, 2, 2, 0) => [im(r8 * zeta), re(-r8 * eta), re(p1 * eta / 2.0), re(p1 * eta / 2.0)],
        (2, 2, 2, 1) => [im(r8 * zeta), re(-r8 * eta), re(p1 * r8 * eta), im(p1 * r8 * zeta)],
        (1, 2, 2, 1) => [re(p1 * r8 * eta), im(p1 * r8 * zeta), im(-r8 * zeta), re(r8 * eta)],
        (1, 2, 0, 1) => [im(p1 * zeta / 2.0), im(p1 * zeta / 2.0), im(-r8 * zeta), re(r8 * eta)],
        (1, 2, 1, 1) => [im(p2 * r8 * zeta), re(-p2 * r8 * eta), im(-r8 * zeta), re(r8 * eta)],
        _ => unreachable!("sign pattern {key:?} cannot occur"),
    }
}

fn build_real_from_table(complex: &CGMatrix<f64>) -> CGMatrix<Complex64> {
    let (l1, l2) = (complex.l1, complex.l2);
    let dim = (2 * l1 + 1) * (2 * l2 + 1);
    let mut c = CGMatrix {
        l1,
        l2,
        matrix: Matrix::zeros(dim, dim),
    };
    let (j1, j2) = (l1 as i64, l2 as i64);
    for l in l1.abs_diff(l2)..=l1 + l2 {
        for m1 in -j1..=j1 {
            for m2 in -j2..=j2 {
                let ratios = table_ratios(l1, m1, l2, m2, l);
                let orders = [m1 + m2, -m1 - m2, m1 - m2, -m1 + m2];
                for (col, (&m, ratio)) in orders.iter().zip(ratios).enumerate() {
                    if m.unsigned_abs() as usize > l {
                        continue;
                    }
                    let base = if col < 2 {
                        complex.get(l, m1 + m2, m1, m2)
                    } else {
                        complex.get(l, m1 - m2, m1, -m2)
                    };
                    c.set(l, m, m1, m2, ratio * base);
                }
            }
        }
    }
    c
}

/// `(T̄^{l₁} ⊗ T̄^{l₂}) C_{l₁,l₂} (⊕_l (T^l)ᵀ)`, by dense products.
pub fn cg_real_matrix_from_complex(l1: usize, l2: usize) -> CGMatrix<Complex64> {
    let complex = cg_complex_matrix(l1, l2);
    let left = t_matrix(l1).into_matrix().conj().kron(&t_matrix(l2).into_matrix().conj());
    let blocks: Vec<Matrix<Complex64>> = (l1.abs_diff(l2)..=l1 + l2)
        .map(|l| t_matrix(l).into_matrix().transpose())
        .collect();
    let right = Matrix::direct_sum(&blocks);
    let matrix = left.matmul(&Matrix::from_real(complex.matrix())).matmul(&right);
    CGMatrix { l1, l2, matrix }
}

#[cfg(feature = "std")]
mod cache {
    use super::*;
    use std::collections::HashMap;
    use std::sync::{OnceLock, RwLock};

    type Store<T> = RwLock<HashMap<(usize, usize), Arc<CGMatrix<T>>>>;

    pub(super) fn get_or_build<T: Scalar>(store: &'static OnceLock<Store<T>>, key: (usize, usize), build: impl FnOnce() -> CGMatrix<T>) -> Arc<CGMatrix<T>> {
        let store = store.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(hit) = store.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Arc::clone(hit);
        }
        let mut guard = store.write().unwrap_or_else(|e| e.into_inner());
        Arc::clone(guard.entry(key).or_insert_with(|| Arc::new(build())))
    }

    pub(super) static COMPLEX: OnceLock<Store<f64>> = OnceLock::new();
    pub(super) static REAL: OnceLock<Store<Complex64>> = OnceLock::new();
}

/// Packed coefficients for complex harmonics, `C_{l₁,l₂}`.
pub fn cg_complex_matrix(l1: usize, l2: usize) -> Arc<CGMatrix<f64>> {
    #[cfg(feature = "std")]
    {
        cache::get_or_build(&cache::COMPLEX, (l1, l2), || build_complex(l1, l2))
    }
    #[cfg(not(feature = "std"))]
    {
        Arc::new(build_complex(l1, l2))
    }
}

/// Packed coefficients for real harmonics, `c_{l₁,l₂}`, from the closed-form
/// sign-pattern table.
pub fn cg_real_matrix(l1: usize, l2: usize) -> Arc<CGMatrix<Complex64>> {
    #[cfg(feature = "std")]
    {
        cache::get_or_build(&cache::REAL, (l1, l2), || build_real_from_table(&cg_complex_matrix(l1, l2)))
    }
    #[cfg(not(feature = "std"))]
    {
        Arc::new(build_real_from_table(&cg_complex_matrix(l1, l2)))
    }
}

/// `C^{l,m}_{l₁,m₁,l₂,m₂}`; zero when `m ≠ m₁ + m₂`.
pub fn cg_complex_coeff(l: usize, m: i64, l1: usize, m1: i64, l2: usize, m2: i64) -> Result<f64> {
    if !in_range(l, m, l1, m1, l2, m2) {
        return Err(coupling_error(l, m, l1, m1, l2, m2));
    }
    if m != m1 + m2 {
        return Ok(0.0);
    }
    Ok(cg_complex_matrix(l1, l2).get(l, m, m1, m2))
}

/// `c^{l,m}_{l₁,m₁,l₂,m₂}` for real harmonics.
pub fn cg_real_coeff(l: usize, m: i64, l1: usize, m1: i64, l2: usize, m2: i64) -> Result<Complex64> {
    if !in_range(l, m, l1, m1, l2, m2) {
        return Err(coupling_error(l, m, l1, m1, l2, m2));
    }
    Ok(cg_real_matrix(l1, l2).get(l, m, m1, m2))
}

/// One term `coefficient · U^l_{m,n}` (or `D^l_{m,n}`) of a product expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductTerm {
    pub l: usize,
    pub m: i64,
    pub n: i64,
    pub coefficient: f64,
}

fn check_orders(l1: usize, m1: i64, n1: i64, l2: usize, m2: i64, n2: i64) -> Result<()> {
    for (l, m) in [(l1, m1), (l1, n1), (l2, m2), (l2, n2)] {
        if m.unsigned_abs() as usize > l {
            return Err(Error::IndexOutOfRange {
                what: "order",
                index: m,
                bound: l as i64,
            });
        }
    }
    Ok(())
}

fn distinct(values: [i64; 4]) -> Vec<i64> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Nonzero terms of `U^{l₁}_{m₁,n₁}(R) U^{l₂}_{m₂,n₂}(R) = Σ c^{l,m} c̄^{l,n} U^l_{m,n}(R)`.
///
/// `m` runs over `{±m₁±m₂}`, `n` over `{±n₁±n₂}`. Fails if a product carries an
/// imaginary part above `1e-12`.
pub fn product_expand_real(l1: usize, m1: i64, n1: i64, l2: usize, m2: i64, n2: i64) -> Result<Vec<ProductTerm>> {
    check_orders(l1, m1, n1, l2, m2, n2)?;
    let c = cg_real_matrix(l1, l2);
    let mut terms = Vec::new();
    for m in distinct([m1 + m2, m1 - m2, -m1 + m2, -m1 - m2]) {
        for n in distinct([n1 + n2, n1 - n2, -n1 + n2, -n1 - n2]) {
            let low = l1.abs_diff(l2).max(m.unsigned_abs() as usize).max(n.unsigned_abs() as usize);
            for l in low..=l1 + l2 {
                let product = c.get(l, m, m1, m2) * c.get(l, n, n1, n2).conj();
                if product.im.abs() > IMAGINARY_RESIDUE_LIMIT {
                    return Err(Error::ImaginaryResidue(product.im));
                }
                if product.re.abs() > TERM_THRESHOLD {
                    terms.push(ProductTerm {
                        l,
                        m,
                        n,
                        coefficient: product.re,
                    });
                }
            }
        }
    }
    Ok(terms)
}

/// Nonzero terms of `D^{l₁}_{m₁,n₁}(R) D^{l₂}_{m₂,n₂}(R) =
/// Σ_l C^{l,m₁+m₂}_{l₁,m₁,l₂,m₂} C^{l,n₁+n₂}_{l₁,n₁,l₂,n₂} D^l_{m₁+m₂,n₁+n₂}(R)`.
pub fn product_expand_complex(l1: usize, m1: i64, n1: i64, l2: usize, m2: i64, n2: i64) -> Result<Vec<ProductTerm>> {
    check_orders(l1, m1, n1, l2, m2, n2)?;
    let c = cg_complex_matrix(l1, l2);
    let (m, n) = (m1 + m2, n1 + n2);
    let low = l1.abs_diff(l2).max(m.unsigned_abs() as usize).max(n.unsigned_abs() as usize);
    Ok((low..=l1 + l2)
        .map(|l| ProductTerm {
            l,
            m,
            n,
            coefficient: c.get(l, m, m1, m2) * c.get(l, n, n1, n2),
        })
        .filter(|t| t.coefficient.abs() > TERM_THRESHOLD)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_rep::wigner_D;
    use crate::geometry::EulerAngles;
    use crate::real_rep::real_U;
    use core::f64::consts::{PI, TAU};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Racah's single-sum formula, in log space.
    fn racah(l: i64, m: i64, l1: i64, m1: i64, l2: i64, m2: i64) -> f64 {
        if m != m1 + m2 {
            return 0.0;
        }
        let f = ln_factorial;
        let pre = 0.5
            * ((2 * l + 1) as f64).ln()
            + 0.5 * (f(l1 + l2 - l) + f(l1 - l2 + l) + f(-l1 + l2 + l) - f(l1 + l2 + l + 1))
            + 0.5 * (f(l1 + m1) + f(l1 - m1) + f(l2 + m2) + f(l2 - m2) + f(l + m) + f(l - m));
        let mut sum = 0.0;
        for k in 0..=(l1 + l2 - l) {
            let args = [l1 + l2 - l - k, l1 - m1 - k, l2 + m2 - k, l - l2 + m1 + k, l - l1 - m2 + k];
            if args.iter().any(|&a| a < 0) {
                continue;
            }
            let log = f(k) + args.iter().map(|&a| f(a)).sum::<f64>();
            sum += parity(k) * (pre - log).exp();
        }
        sum
    }

    fn random_euler(rng: &mut ChaCha8Rng) -> EulerAngles {
        EulerAngles::new(rng.random_range(0.0..TAU), rng.random_range(0.0..PI), rng.random_range(0.0..TAU)).unwrap()
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(cg_complex_coeff(0, 0, 0, 0, 0, 0).unwrap(), 1.0);
        let c = cg_complex_matrix(1, 0);
        assert_eq!(c.matrix().max_abs_diff(&Matrix::identity(3)), 0.0);
        assert!(cg_complex_coeff(3, 0, 1, 0, 1, 0).is_err());
        assert!(cg_complex_coeff(1, 2, 1, 1, 1, 1).is_err());
        assert_eq!(cg_complex_coeff(1, 0, 1, 1, 1, 0).unwrap(), 0.0);
    }

    #[test]
    fn matches_racah() {
        for l1 in 0..7i64 {
            for l2 in 0..7i64 {
                let c = cg_complex_matrix(l1 as usize, l2 as usize);
                for l in (l1 - l2).abs()..=l1 + l2 {
                    for m1 in -l1..=l1 {
                        for m2 in -l2..=l2 {
                            let m = m1 + m2;
                            if m.abs() > l {
                                continue;
                            }
                            let got = c.get(l as usize, m, m1, m2);
                            let want = racah(l, m, l1, m1, l2, m2);
                            assert!((got - want).abs() < 1e-12, "{l1} {m1} {l2} {m2} | {l} {m}: {got} vs {want}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_and_symmetry() {
        for (l1, l2) in [(1usize, 1usize), (2, 3), (4, 2)] {
            let c = cg_complex_matrix(l1, l2);
            let ctc = c.matrix().transpose().matmul(c.matrix());
            assert!(ctc.max_abs_diff(&Matrix::identity(ctc.rows())) < 1e-12);
            let cct = c.matrix().matmul(&c.matrix().transpose());
            assert!(cct.max_abs_diff(&Matrix::identity(cct.rows())) < 1e-12);
            let (j1, j2) = (l1 as i64, l2 as i64);
            for l in l1.abs_diff(l2)..=l1 + l2 {
                for m1 in -j1..=j1 {
                    for m2 in -j2..=j2 {
                        let sign = parity(j1 + j2 - l as i64);
                        assert!((c.get(l, m1 + m2, m1, m2) - sign * c.get(l, -m1 - m2, -m1, -m2)).abs() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn kronecker_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (l1, l2) in [(1usize, 1usize), (2, 1), (0, 3), (3, 2)] {
            let e = random_euler(&mut rng);
            let range = l1.abs_diff(l2)..=l1 + l2;

            let c = cg_complex_matrix(l1, l2);
            let lhs = wigner_D(l1, &e).into_matrix().kron(&wigner_D(l2, &e).into_matrix());
            let blocks: Vec<Matrix<Complex64>> = range.clone().map(|l| wigner_D(l, &e).into_matrix()).collect();
            let cc = Matrix::from_real(c.matrix());
            let rhs = cc.matmul(&Matrix::direct_sum(&blocks)).matmul(&cc.transpose());
            assert!(lhs.max_abs_diff(&rhs) < 1e-10);

            let r = cg_real_matrix(l1, l2);
            let lhs = Matrix::from_real(&real_U(l1, &e).into_matrix().kron(&real_U(l2, &e).into_matrix()));
            let blocks: Vec<Matrix<Complex64>> = range.map(|l| Matrix::from_real(real_U(l, &e).matrix())).collect();
            let rhs = r.matrix().matmul(&Matrix::direct_sum(&blocks)).matmul(&r.matrix().adjoint());
            assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        }
    }

    #[test]
    fn table_matches_triple_product() {
        for l1 in 0..6 {
            for l2 in 0..6 {
                let table = cg_real_matrix(l1, l2);
                let direct = cg_real_matrix_from_complex(l1, l2);
                assert!(table.matrix().max_abs_diff(direct.matrix()) < 1e-12, "({l1},{l2})");
            }
        }
        let c = cg_real_matrix(2, 3);
        let prod = c.matrix().matmul(&c.matrix().adjoint());
        assert!(prod.max_abs_diff(&Matrix::identity(35)) < 1e-12);
        // first table row: all-zero orders carry the complex value unchanged
        for l in 1..=5 {
            let z = cg_real_coeff(l, 0, 2, 0, 3, 0).unwrap();
            assert!((z - Complex64::new(cg_complex_coeff(l, 0, 2, 0, 3, 0).unwrap(), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn product_expansions() {
        assert_eq!(
            product_expand_real(0, 0, 0, 0, 0, 0).unwrap(),
            vec![ProductTerm { l: 0, m: 0, n: 0, coefficient: 1.0 }]
        );
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let (l1, l2) = (rng.random_range(0..4usize), rng.random_range(0..4usize));
            let pick = |rng: &mut ChaCha8Rng, l: usize| rng.random_range(-(l as i64)..=l as i64);
            let (m1, n1, m2, n2) = (pick(&mut rng, l1), pick(&mut rng, l1), pick(&mut rng, l2), pick(&mut rng, l2));
            let real_terms = product_expand_real(l1, m1, n1, l2, m2, n2).unwrap();
            let complex_terms = product_expand_complex(l1, m1, n1, l2, m2, n2).unwrap();
            for _ in 0..3 {
                let e = random_euler(&mut rng);
                let want = real_U(l1, &e).get(m1, n1) * real_U(l2, &e).get(m2, n2);
                let got: f64 = real_terms.iter().map(|t| t.coefficient * real_U(t.l, &e).get(t.m, t.n)).sum();
                assert!((got - want).abs() < 1e-10);
                let want = wigner_D(l1, &e).get(m1, n1) * wigner_D(l2, &e).get(m2, n2);
                let got: Complex64 = complex_terms.iter().map(|t| wigner_D(t.l, &e).get(t.m, t.n) * t.coefficient).sum();
                assert!((got - want).norm() < 1e-10);
            }
        }
    }
}
