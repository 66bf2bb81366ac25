//! Vector algebra of the simply isotropic plane I² and space I³.
//!
//! The isotropic metric only sees the top view (`x`, `y`) of a vector; the
//! vertical `z` direction has length zero and is measured by the secondary
//! metric instead. Euclidean products are provided for the auxiliary
//! constructions (normals, determinants) that need them.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Absolute tolerance for scalar comparisons, scaled by magnitude.
pub const TOLERANCE: f64 = 1e-12;

/// `true` when `a` and `b` agree to [`TOLERANCE`] relative to their magnitude
/// (absolute below unit scale).
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOLERANCE * 1f64.max(a.abs()).max(b.abs())
}

/// A vector of I², `z` being the isotropic direction.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IsoVec2 {
    pub x: f64,
    pub z: f64,
}

impl IsoVec2 {
    pub const fn new(x: f64, z: f64) -> Self {
        Self { x, z }
    }

    /// Isotropic inner product `u¹v¹`.
    pub fn iso_dot(self, other: Self) -> f64 {
        self.x * other.x
    }

    /// Secondary inner product `u³v³`.
    pub fn sec_dot(self, other: Self) -> f64 {
        self.z * other.z
    }

    pub fn iso_norm(self) -> f64 {
        self.iso_dot(self).sqrt()
    }

    pub fn euclid_dot(self, other: Self) -> f64 {
        self.x * other.x + self.z * other.z
    }

    /// `det(self, other)` with the vectors as rows.
    pub fn det(self, other: Self) -> f64 {
        self.x * other.z - self.z * other.x
    }

    /// Counter-clockwise quarter rotation in the xz-plane.
    pub fn rotate_quarter(self) -> Self {
        Self::new(-self.z, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.z.is_finite()
    }
}

impl Add for IsoVec2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.z + rhs.z)
    }
}

impl Sub for IsoVec2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.z - rhs.z)
    }
}

impl Mul<f64> for IsoVec2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.z * s)
    }
}

impl Neg for IsoVec2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.z)
    }
}

/// A vector of I³, `z` being the isotropic direction.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IsoVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl IsoVec3 {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const X: Self = Self::new(1.0, 0.0, 0.0);
    pub const Y: Self = Self::new(0.0, 1.0, 0.0);
    pub const Z: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Isotropic (degenerate) inner product `u¹v¹ + u²v²`.
    pub fn iso_dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Secondary inner product `u³v³`, meaningful on isotropic vectors.
    pub fn sec_dot(self, other: Self) -> f64 {
        self.z * other.z
    }

    /// Semi-norm induced by the isotropic metric; zero exactly on isotropic vectors.
    pub fn iso_norm(self) -> f64 {
        self.iso_dot(self).sqrt()
    }

    /// Projection onto the xy-plane.
    pub fn top_view(self) -> Self {
        Self::new(self.x, self.y, 0.0)
    }

    pub fn euclid_dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn euclid_cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn euclid_norm(self) -> f64 {
        self.euclid_dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Determinant of the 3×3 matrix with rows `a`, `b`, `c`.
pub fn det3(a: IsoVec3, b: IsoVec3, c: IsoVec3) -> f64 {
    a.euclid_dot(b.euclid_cross(c))
}

impl Add for IsoVec3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for IsoVec3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for IsoVec3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for IsoVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn iso_dot_examples() {
        assert_eq!(
            IsoVec3::new(1.0, 2.0, 5.0).iso_dot(IsoVec3::new(3.0, 4.0, 7.0)),
            11.0
        );
        assert_eq!(
            IsoVec3::new(0.0, 0.0, 9.0).iso_dot(IsoVec3::new(0.0, 0.0, 9.0)),
            0.0
        );
        assert_eq!(IsoVec3::X.iso_dot(IsoVec3::X), 1.0);
        assert_eq!(IsoVec2::new(2.0, 5.0).iso_dot(IsoVec2::new(3.0, -1.0)), 6.0);
    }

    #[test]
    fn sec_dot_examples() {
        assert_eq!(
            IsoVec3::new(0.0, 0.0, 2.0).sec_dot(IsoVec3::new(0.0, 0.0, 3.0)),
            6.0
        );
        assert_eq!(
            IsoVec3::new(1.0, 1.0, 0.0).sec_dot(IsoVec3::new(1.0, 1.0, 0.0)),
            0.0
        );
        assert_eq!(IsoVec3::Z.sec_dot(IsoVec3::Z), 1.0);
    }

    #[test]
    fn top_view_examples() {
        assert_eq!(
            IsoVec3::new(1.0, 2.0, 3.0).top_view(),
            IsoVec3::new(1.0, 2.0, 0.0)
        );
        assert_eq!(IsoVec3::new(0.0, 0.0, 5.0).top_view(), IsoVec3::ZERO);
        let fixed = IsoVec3::new(-1.0, 4.0, 0.0);
        assert_eq!(fixed.top_view(), fixed);
    }

    #[test]
    fn euclidean_products() {
        let u = IsoVec3::new(1.0, 2.0, 3.0);
        assert_eq!(u.euclid_dot(IsoVec3::new(4.0, 5.0, 6.0)), 32.0);
        assert_eq!(IsoVec3::X.euclid_cross(IsoVec3::Y), IsoVec3::Z);
        assert_eq!(u.euclid_cross(u), IsoVec3::ZERO);
    }

    #[test]
    fn iso_norm_examples() {
        assert_eq!(IsoVec3::new(3.0, 4.0, 7.0).iso_norm(), 5.0);
        assert_eq!(IsoVec3::Z.iso_norm(), 0.0);
        assert_eq!(IsoVec3::X.iso_norm(), 1.0);
    }

    #[test]
    fn approx_eq_scales_with_magnitude() {
        assert!(approx_eq(1e6, 1e6 + 1e-7));
        assert!(!approx_eq(1.0, 1.0 + 1e-9));
        assert!(approx_eq(0.0, 1e-13));
    }

    fn vec3() -> impl Strategy<Value = IsoVec3> {
        (-1e3..1e3f64, -1e3..1e3f64, -1e3..1e3f64).prop_map(|(x, y, z)| IsoVec3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn iso_dot_symmetric_bilinear(u in vec3(), v in vec3(), w in vec3(), s in -10.0..10.0f64) {
            prop_assert_eq!(u.iso_dot(v), v.iso_dot(u));
            let lhs = (u * s + w).iso_dot(v);
            let rhs = s * u.iso_dot(v) + w.iso_dot(v);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
        }

        #[test]
        fn iso_norm_vanishes_iff_top_view_vanishes(u in vec3(), keep in any::<bool>()) {
            let u = if keep { u } else { IsoVec3::new(0.0, 0.0, u.z) };
            prop_assert_eq!(u.iso_norm() == 0.0, u.top_view() == IsoVec3::ZERO);
        }

        #[test]
        fn cross_is_orthogonal(u in vec3(), v in vec3()) {
            let w = u.euclid_cross(v);
            let scale = u.euclid_norm() * v.euclid_norm() * (u.euclid_norm() + v.euclid_norm()) + 1.0;
            prop_assert!(w.euclid_dot(u).abs() <= 1e-12 * scale);
            prop_assert!(w.euclid_dot(v).abs() <= 1e-12 * scale);
        }
    }
}
