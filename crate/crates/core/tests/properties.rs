use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use so3ft_core::clebsch_gordan::{cg_complex_coeff, cg_real_matrix};
use so3ft_core::complex_rep::{sph_harm_Y, wigner_D, SphericalPoint};
use so3ft_core::geometry::{euler_to_matrix, exp_so3, matrix_to_euler, EulerAngles, Vector3};
use so3ft_core::real_rep::{real_S, real_U};
use so3ft_core::Matrix;

fn euler() -> impl Strategy<Value = EulerAngles> {
    (0.0..TAU, 0.0..=PI, 0.0..TAU).prop_map(|(a, b, g)| EulerAngles::new(a, b, g).unwrap())
}

fn compose(a: &EulerAngles, b: &EulerAngles) -> EulerAngles {
    matrix_to_euler(&(euler_to_matrix(a) * euler_to_matrix(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_representation_is_a_homomorphism(a in euler(), b in euler(), l in 0usize..10) {
        let ab = real_U(l, &compose(&a, &b));
        let product = real_U(l, &a).matmul(&real_U(l, &b));
        prop_assert!(ab.max_abs_diff(&product) < 1e-11);
        prop_assert!(ab.unitarity_defect() < 1e-12);
    }

    #[test]
    fn complex_representation_is_a_homomorphism(a in euler(), b in euler(), l in 0usize..10) {
        let ab = wigner_D(l, &compose(&a, &b));
        let product = wigner_D(l, &a).matmul(&wigner_D(l, &b));
        prop_assert!(ab.max_abs_diff(&product) < 1e-11);
    }

    #[test]
    fn euler_angles_survive_the_matrix_round_trip(e in euler()) {
        let r = euler_to_matrix(&e);
        let back = euler_to_matrix(&matrix_to_euler(&r));
        prop_assert!(so3ft_core::geometry::max_abs_diff(r.as_array(), back.as_array()) < 1e-12);
    }

    #[test]
    fn exponential_map_gives_rotations(x in -3.0..3.0f64, y in -3.0..3.0f64, z in -3.0..3.0f64) {
        let r = exp_so3(&Vector3([x, y, z]));
        prop_assert!(r.orthogonality_defect() < 1e-13);
        prop_assert!((r.determinant() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn real_harmonics_rotate_by_the_transpose(e in euler(), theta in 0.0..=PI, phi in 0.0..TAU, l in 0usize..8) {
        // S(Rᵀx) = U(R)ᵀ S(x)
        let r = euler_to_matrix(&e);
        let p = SphericalPoint::new(theta, phi).unwrap();
        let q = SphericalPoint::from_vector(&r.transpose().apply(&p.to_vector()));
        let lhs = real_S(l, &q).unwrap();
        let rhs = real_U(l, &e).matrix().transpose().matvec(&real_S(l, &p).unwrap());
        for (a, b) in lhs.iter().zip(&rhs) {
            prop_assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn addition_theorem(theta in 0.0..=PI, phi in 0.0..TAU, l in 0usize..12) {
        // Σ_m |Y^l_m|² = (2l+1)/4π, and the same for the real basis
        let p = SphericalPoint::new(theta, phi).unwrap();
        let want = (2 * l + 1) as f64 / (4.0 * PI);
        let complex: f64 = sph_harm_Y(l, &p).iter().map(|y| y.norm_sqr()).sum();
        let real: f64 = real_S(l, &p).unwrap().iter().map(|s| s * s).sum();
        prop_assert!((complex - want).abs() < 1e-12);
        prop_assert!((real - want).abs() < 1e-12);
    }

    #[test]
    fn complex_cg_exchange_symmetry(l1 in 0usize..6, l2 in 0usize..6, dl in 0usize..12, m1 in -5i64..=5, m2 in -5i64..=5) {
        let l = l1.abs_diff(l2) + dl % (l1 + l2 - l1.abs_diff(l2) + 1);
        prop_assume!(m1.unsigned_abs() as usize <= l1 && m2.unsigned_abs() as usize <= l2);
        let m = m1 + m2;
        prop_assume!(m.unsigned_abs() as usize <= l);
        let sign = if (l1 + l2 - l) % 2 == 0 { 1.0 } else { -1.0 };
        let a = cg_complex_coeff(l, m, l1, m1, l2, m2).unwrap();
        let b = cg_complex_coeff(l, m, l2, m2, l1, m1).unwrap();
        let c = cg_complex_coeff(l, -m, l1, -m1, l2, -m2).unwrap();
        prop_assert!((a - sign * b).abs() < 1e-12);
        prop_assert!((a - sign * c).abs() < 1e-12);
    }

    #[test]
    fn real_cg_matrices_are_unitary(l1 in 0usize..6, l2 in 0usize..6) {
        let c = cg_real_matrix(l1, l2);
        let prod = c.matrix().adjoint().matmul(c.matrix());
        prop_assert!(prod.max_abs_diff(&Matrix::identity(prod.rows())) < 1e-12);
    }
}
