//! Rotation-group primitives: 3-2-3 Euler angles, rotation matrices, the
//! hat/vee isomorphism between R³ and so(3), and the exponential map.

use core::f64::consts::{PI, TAU};
use core::ops::{Add, Mul, Neg, Sub};

#[cfg(not(any(test, feature = "std")))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

const BETA_TOLERANCE: f64 = 1e-12;
const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;
const SKEW_TOLERANCE: f64 = 1e-10;
// Below this sin(beta) the alpha/gamma split is not identifiable.
const GIMBAL_THRESHOLD: f64 = 1e-12;

/// A vector in R³.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vector3(pub [f64; 3]);

impl Vector3 {
    pub const E1: Vector3 = Vector3([1.0, 0.0, 0.0]);
    pub const E2: Vector3 = Vector3([0.0, 1.0, 0.0]);
    pub const E3: Vector3 = Vector3([0.0, 0.0, 1.0]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vector3([x, y, z])
    }

    /// Unit basis vector `e_{axis+1}`.
    pub fn basis(axis: usize) -> Self {
        let mut v = [0.0; 3];
        v[axis] = 1.0;
        Vector3(v)
    }

    pub fn dot(&self, other: &Vector3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Vector3) -> Vector3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Vector3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vector3 {
        Vector3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Add for Vector3 {
    type Output = Vector3;
    fn add(self, rhs: Vector3) -> Vector3 {
        Vector3([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for Vector3 {
    type Output = Vector3;
    fn sub(self, rhs: Vector3) -> Vector3 {
        Vector3([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        self.scale(-1.0)
    }
}

/// Standard basis direction of R³, used to index Lie-algebra generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    E1,
    E2,
    E3,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::E1, Axis::E2, Axis::E3];

    pub fn vector(self) -> Vector3 {
        match self {
            Axis::E1 => Vector3::E1,
            Axis::E2 => Vector3::E2,
            Axis::E3 => Vector3::E3,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::E1 => 0,
            Axis::E2 => 1,
            Axis::E3 => 2,
        }
    }
}

/// A plain 3×3 matrix, row-major.
pub type Matrix3 = [[f64; 3]; 3];

fn matmul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut c = [[0.0; 3]; 3];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn transpose(a: &Matrix3) -> Matrix3 {
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

fn det(a: &Matrix3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &Matrix3, b: &Matrix3) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

/// An element of SO(3): `RᵀR = I`, `det R = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix(Matrix3);

impl RotationMatrix {
    pub const IDENTITY: RotationMatrix =
        RotationMatrix([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    /// Validates orthogonality and orientation to within `1e-12`.
    pub fn new(m: Matrix3) -> Result<Self> {
        let defect = orthogonality_defect(&m);
        if defect > ORTHOGONALITY_TOLERANCE {
            return Err(Error::InvalidConfig("rotation matrix orthogonality"));
        }
        Ok(RotationMatrix(m))
    }

    pub fn as_array(&self) -> &Matrix3 {
        &self.0
    }

    pub fn transpose(&self) -> RotationMatrix {
        RotationMatrix(transpose(&self.0))
    }

    pub fn apply(&self, v: &Vector3) -> Vector3 {
        let m = &self.0;
        Vector3([
            m[0][0] * v.0[0] + m[0][1] * v.0[1] + m[0][2] * v.0[2],
            m[1][0] * v.0[0] + m[1][1] * v.0[1] + m[1][2] * v.0[2],
            m[2][0] * v.0[0] + m[2][1] * v.0[1] + m[2][2] * v.0[2],
        ])
    }

    pub fn determinant(&self) -> f64 {
        det(&self.0)
    }

    /// Max-abs entry of `RᵀR - I`.
    pub fn orthogonality_defect(&self) -> f64 {
        orthogonality_defect(&self.0)
    }

    /// Rotation angle in `[0, π]`.
    pub fn angle(&self) -> f64 {
        let m = &self.0;
        let c = ((m[0][0] + m[1][1] + m[2][2] - 1.0) / 2.0).clamp(-1.0, 1.0);
        c.acos()
    }
}

fn orthogonality_defect(m: &Matrix3) -> f64 {
    let rtr = matmul(&transpose(m), m);
    let mut defect = max_abs_diff(&rtr, RotationMatrix::IDENTITY.as_array());
    defect = defect.max((det(m) - 1.0).abs());
    defect
}

impl Mul for RotationMatrix {
    type Output = RotationMatrix;
    fn mul(self, rhs: RotationMatrix) -> RotationMatrix {
        RotationMatrix(matmul(&self.0, &rhs.0))
    }
}

impl Mul<Vector3> for RotationMatrix {
    type Output = Vector3;
    fn mul(self, rhs: Vector3) -> Vector3 {
        self.apply(&rhs)
    }
}

/// 3-2-3 Euler angles, `R = exp(α ê₃) exp(β ê₂) exp(γ ê₃)`.
///
/// `alpha` and `gamma` live in `[0, 2π)`, `beta` in `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

fn wrap_two_pi(x: f64) -> f64 {
    let w = x - TAU * (x / TAU).floor();
    // rounding can land exactly on TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

impl EulerAngles {
    pub const ZERO: EulerAngles = EulerAngles {
        alpha: 0.0,
        beta: 0.0,
        gamma: 0.0,
    };

    /// Normalizes `alpha`, `gamma` modulo 2π; rejects `beta` outside `[0, π]`
    /// by more than `1e-12` and clamps it otherwise.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let beta = check_polar("beta", beta)?;
        Ok(EulerAngles {
            alpha: wrap_two_pi(alpha),
            beta,
            gamma: wrap_two_pi(gamma),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn to_matrix(&self) -> RotationMatrix {
        euler_to_matrix(self)
    }
}

/// Checks that an angle lies in `[0, π]` up to `1e-12` and clamps it.
pub(crate) fn check_polar(name: &'static str, value: f64) -> Result<f64> {
    if !(-BETA_TOLERANCE..=PI + BETA_TOLERANCE).contains(&value) {
        return Err(Error::AngleOutOfRange { name, value });
    }
    Ok(value.clamp(0.0, PI))
}

/// `exp(θ ê₃)`.
pub fn rot_z(theta: f64) -> RotationMatrix {
    let (s, c) = theta.sin_cos();
    RotationMatrix([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
}

/// `exp(θ ê₂)`.
pub fn rot_y(theta: f64) -> RotationMatrix {
    let (s, c) = theta.sin_cos();
    RotationMatrix([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
}

pub fn euler_to_matrix(e: &EulerAngles) -> RotationMatrix {
    rot_z(e.alpha) * rot_y(e.beta) * rot_z(e.gamma)
}

/// Inverse of [`euler_to_matrix`]. At `β ∈ {0, π}` the twist is folded into
/// `α` and `γ = 0`.
pub fn matrix_to_euler(r: &RotationMatrix) -> EulerAngles {
    let m = &r.0;
    let sin_beta = (m[2][0] * m[2][0] + m[2][1] * m[2][1]).sqrt();
    let beta = sin_beta.atan2(m[2][2]);
    let (alpha, gamma) = if sin_beta > GIMBAL_THRESHOLD {
        (m[1][2].atan2(m[0][2]), m[2][1].atan2(-m[2][0]))
    } else if m[2][2] > 0.0 {
        // R = Rz(α + γ)
        (m[1][0].atan2(m[0][0]), 0.0)
    } else {
        // R = Rz(α) diag(-1, 1, -1) Rz(γ)
        ((-m[0][1]).atan2(-m[0][0]), 0.0)
    };
    EulerAngles {
        alpha: wrap_two_pi(alpha),
        beta: beta.clamp(0.0, PI),
        gamma: wrap_two_pi(gamma),
    }
}

/// Skew-symmetric matrix with `hat(v) y = v × y`.
pub fn hat(v: &Vector3) -> Matrix3 {
    let [x, y, z] = v.0;
    [[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]]
}

/// Inverse of [`hat`].
pub fn vee(s: &Matrix3) -> Result<Vector3> {
    let mut sym: f64 = 0.0;
    for (i, row) in s.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            sym = sym.max((v + s[j][i]).abs() / 2.0);
        }
    }
    if sym > SKEW_TOLERANCE {
        return Err(Error::NotSkewSymmetric(sym));
    }
    Ok(Vector3([
        (s[2][1] - s[1][2]) / 2.0,
        (s[0][2] - s[2][0]) / 2.0,
        (s[1][0] - s[0][1]) / 2.0,
    ]))
}

/// Rodrigues' formula for `exp(hat(v))`.
pub fn exp_so3(v: &Vector3) -> RotationMatrix {
    let theta = v.norm();
    if theta < 1e-15 {
        return RotationMatrix::IDENTITY;
    }
    let k = hat(&v.scale(1.0 / theta));
    let k2 = matmul(&k, &k);
    let (s, c) = theta.sin_cos();
    let mut r = RotationMatrix::IDENTITY.0;
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] += s * k[i][j] + (1.0 - c) * k2[i][j];
        }
    }
    RotationMatrix(r)
}
