//! Primitive convex geometry: planar hulls and polygons, 3D hulls and
//! polytopes, and the handful of reference bodies everything else is built
//! from.

mod bodies;
mod hull3d;
mod polygon;
mod polytope;

pub use bodies::{
    equilateral_triangle, icosphere, regular_polygon, segment, unit_cube, unit_square,
    unit_tetrahedron, UNIT_TETRA_VERTICES,
};
pub use polygon::{convex_hull_2d, convex_hull_2d_with, ConvexPolygon2, HalfPlane, PolygonKind};
pub use polytope::{
    convex_hull_3d, convex_hull_3d_with, polytope_volume, Edge, Facet, ConvexPolytope3,
    PolytopeKind,
};

use crate::error::{Error, Result};

pub type Point2 = nalgebra::Vector2<f64>;
pub type Point3 = nalgebra::Vector3<f64>;
pub type Vector2 = nalgebra::Vector2<f64>;
pub type Vector3 = nalgebra::Vector3<f64>;

/// Absolute thresholds for unit-scale bodies.
///
/// `eps_geom` decides coincidence and collinearity/coplanarity during hull
/// construction; `eps_num` is the threshold for comparing derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps_geom: f64,
    pub eps_num: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        eps_geom: 1e-9,
        eps_num: 1e-10,
    };

    pub fn new(eps_geom: f64, eps_num: f64) -> Result<Self> {
        for (name, v) in [("eps_geom", eps_geom), ("eps_num", eps_num)] {
            if !(v > 0.0 && v < 1e-6) {
                return Err(Error::invalid(format!("{name} must lie in (0, 1e-6), got {v}")));
            }
        }
        Ok(Tolerance { eps_geom, eps_num })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

pub(crate) fn ensure_finite2(points: &[Point2]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::invalid("no points"));
    }
    if let Some(p) = points.iter().find(|p| !(p.x.is_finite() && p.y.is_finite())) {
        return Err(Error::invalid(format!("non-finite point ({}, {})", p.x, p.y)));
    }
    Ok(())
}

pub(crate) fn ensure_finite3(points: &[Point3]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::invalid("no points"));
    }
    if let Some(p) = points.iter().find(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(Error::invalid(format!("non-finite point ({}, {}, {})", p.x, p.y, p.z)));
    }
    Ok(())
}
