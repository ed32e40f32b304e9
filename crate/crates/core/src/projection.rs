//! Shadows: orthogonal projections of a polytope onto the plane `u⊥`.
//!
//! Two routes produce the same shadow up to a planar congruence: an
//! arbitrary direction with a deterministic in-plane basis, and an explicit
//! pair of rotations (about x, then about y) followed by dropping `z`.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull_2d, ConvexPolygon2, ConvexPolytope3, Point2, Vector3};

/// A unit vector in 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct Direction3(Vector3);

impl Direction3 {
    /// Normalizes `v`; fails on zero or non-finite input.
    pub fn new(v: Vector3) -> Result<Self> {
        let n = v.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::invalid(format!(
                "direction ({}, {}, {}) cannot be normalized",
                v.x, v.y, v.z
            )));
        }
        Ok(Direction3(v / n))
    }

    pub fn from_xyz(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(Vector3::new(x, y, z))
    }

    pub(crate) fn new_unchecked(v: Vector3) -> Self {
        debug_assert!((v.norm() - 1.0).abs() < 1e-12);
        Direction3(v)
    }

    pub fn vector(&self) -> &Vector3 {
        &self.0
    }

    pub fn opposite(&self) -> Self {
        Direction3(-self.0)
    }

    /// Angle to `other` in radians, in `[0, π]`.
    pub fn angle_to(&self, other: &Direction3) -> f64 {
        self.0.dot(&other.0).clamp(-1.0, 1.0).acos()
    }

    /// Angle to the line through `other`, in `[0, π/2]`.
    pub fn axis_angle_to(&self, other: &Direction3) -> f64 {
        self.0.dot(&other.0).abs().min(1.0).acos()
    }
}

impl From<Direction3> for [f64; 3] {
    fn from(d: Direction3) -> Self {
        [d.0.x, d.0.y, d.0.z]
    }
}

impl TryFrom<[f64; 3]> for Direction3 {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        Direction3::new(Vector3::from(v))
    }
}

/// Rotation by `alpha` about the x-axis followed by `beta` about the y-axis,
/// both in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationPair {
    pub alpha: f64,
    pub beta: f64,
}

impl RotationPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::invalid("rotation angles must be finite"));
        }
        Ok(RotationPair { alpha, beta })
    }

    pub fn from_degrees(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha.to_radians(), beta.to_radians())
    }

    /// The direction whose shadow [`shadow_via_rotation`] produces:
    /// `R⁻¹ e_z`.
    pub fn view_direction(&self) -> Direction3 {
        let r = rotation_matrices(self);
        Direction3::new_unchecked(r.transpose() * Vector3::z())
    }
}

/// `{e1, e2}` spanning `u⊥` with `e1 × e2 = u`.
///
/// `e1` is Gram–Schmidt of the coordinate axis least aligned with `u`
/// (lowest index on ties), so the basis is a fixed function of `u`.
pub fn orthonormal_basis(u: &Direction3) -> (Vector3, Vector3) {
    let v = u.vector();
    let a = v.map(f64::abs);
    let axis = if a.x <= a.y && a.x <= a.z {
        Vector3::x()
    } else if a.y <= a.z {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let e1 = (axis - v * axis.dot(v)).normalize();
    let e2 = v.cross(&e1);
    (e1, e2)
}

/// Hull of the vertices expressed in the in-plane basis `(e1, e2)`.
pub fn shadow_in_basis(p: &ConvexPolytope3, e1: &Vector3, e2: &Vector3) -> ConvexPolygon2 {
    let pts: Vec<Point2> = p
        .vertices()
        .iter()
        .map(|v| Point2::new(v.dot(e1), v.dot(e2)))
        .collect();
    convex_hull_2d(&pts).expect("polytope vertices are finite")
}

/// The shadow `P_u` in the basis of [`orthonormal_basis`].
pub fn shadow(p: &ConvexPolytope3, u: &Direction3) -> ConvexPolygon2 {
    let (e1, e2) = orthonormal_basis(u);
    shadow_in_basis(p, &e1, &e2)
}

/// `R_y(β) · R_x(α)`.
pub fn rotation_matrices(rp: &RotationPair) -> Matrix3<f64> {
    let (sa, ca) = rp.alpha.sin_cos();
    let (sb, cb) = rp.beta.sin_cos();
    #[rustfmt::skip]
    let rx = Matrix3::new(
        1.0, 0.0, 0.0,
        0.0, ca, -sa,
        0.0, sa, ca,
    );
    #[rustfmt::skip]
    let ry = Matrix3::new(
        cb, 0.0, sb,
        0.0, 1.0, 0.0,
        -sb, 0.0, cb,
    );
    ry * rx
}

/// Rotate every vertex, drop `z`, take the hull.
pub fn shadow_via_rotation(p: &ConvexPolytope3, rp: &RotationPair) -> ConvexPolygon2 {
    let r = rotation_matrices(rp);
    let pts: Vec<Point2> = p
        .vertices()
        .iter()
        .map(|v| {
            let w = r * v;
            Point2::new(w.x, w.y)
        })
        .collect();
    convex_hull_2d(&pts).expect("polytope vertices are finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{unit_cube, unit_tetrahedron, Point3};

    const S3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn basis_for_z_axis() {
        let (e1, e2) = orthonormal_basis(&Direction3::from_xyz(0.0, 0.0, 1.0).unwrap());
        assert_eq!(e1, Vector3::x());
        assert_eq!(e2, Vector3::y());
    }

    #[test]
    fn basis_for_x_axis_spans_yz() {
        let (e1, e2) = orthonormal_basis(&Direction3::from_xyz(1.0, 0.0, 0.0).unwrap());
        assert!(e1.x.abs() < 1e-15 && e2.x.abs() < 1e-15);
        assert!((e1.norm() - 1.0).abs() < 1e-15 && e1.dot(&e2).abs() < 1e-15);
    }

    #[test]
    fn direction_rejects_zero() {
        assert!(Direction3::from_xyz(0.0, 0.0, 0.0).is_err());
        assert!(Direction3::from_xyz(f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn tetra_base_shadow() {
        let s = shadow(&unit_tetrahedron(), &Direction3::from_xyz(0.0, 0.0, 1.0).unwrap());
        assert_eq!(s.len(), 3);
        let expect = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.5, S3 / 2.0)];
        for (got, want) in s.vertices().iter().zip(&expect) {
            assert!((got - want).norm() < 1e-15);
        }
        assert!((s.area() - S3 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn cube_axis_shadow_is_unit_square() {
        let s = shadow(&unit_cube(), &Direction3::from_xyz(0.0, 1.0, 0.0).unwrap());
        assert_eq!(s.len(), 4);
        assert!((s.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_rotation_is_identity() {
        let r = rotation_matrices(&RotationPair::new(0.0, 0.0).unwrap());
        assert_eq!(r, Matrix3::identity());
    }

    #[test]
    fn rotated_vertices_match_closed_forms() {
        let (alpha, beta) = (0.37, -1.21);
        let r = rotation_matrices(&RotationPair::new(alpha, beta).unwrap());
        assert!((r.determinant() - 1.0).abs() < 1e-14);
        assert!((r * r.transpose() - Matrix3::identity()).norm() < 1e-14);

        let e = r * Point3::new(1.0, 0.0, 0.0);
        assert!((e - Point3::new(beta.cos(), 0.0, -beta.sin())).norm() < 1e-15);

        let w = r * Point3::new(0.5, S3 / 2.0, 0.0);
        let x = 0.5 * beta.cos() + S3 / 2.0 * alpha.sin() * beta.sin();
        assert!((w.x - x).abs() < 1e-15);
        assert!((w.y - S3 / 2.0 * alpha.cos()).abs() < 1e-15);

        let apex = r * Point3::new(0.5, S3 / 6.0, (2.0f64 / 3.0).sqrt());
        let x = 0.5 * beta.cos()
            + S3 / 6.0 * alpha.sin() * beta.sin()
            + (2.0f64 / 3.0).sqrt() * alpha.cos() * beta.sin();
        let y = S3 / 6.0 * alpha.cos() - (2.0f64 / 3.0).sqrt() * alpha.sin();
        assert!((apex.x - x).abs() < 1e-15);
        assert!((apex.y - y).abs() < 1e-15);
    }

    #[test]
    fn zero_rotation_shadow_is_base() {
        let s = shadow_via_rotation(&unit_tetrahedron(), &RotationPair::new(0.0, 0.0).unwrap());
        assert_eq!(s.len(), 3);
        assert!((s.area() - S3 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn degrees_are_converted() {
        let rp = RotationPair::from_degrees(90.0, 0.0).unwrap();
        assert!((rp.alpha - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
