//! Minkowski sums and interpolations of convex bodies, and the closed-form
//! volume of a polytope thickened by a ball.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    convex_hull_2d, convex_hull_3d, ConvexPolygon2, ConvexPolytope3, Point2, Point3,
};
use crate::polynomial::CubicPolynomial;

/// `P ⊕ Q` as the hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &ConvexPolytope3, q: &ConvexPolytope3) -> ConvexPolytope3 {
    let sums: Vec<Point3> = p
        .vertices()
        .iter()
        .flat_map(|a| q.vertices().iter().map(move |b| a + b))
        .collect();
    convex_hull_3d(&sums).expect("sums of finite vertices are finite")
}

pub fn minkowski_sum_2d(p: &ConvexPolygon2, q: &ConvexPolygon2) -> ConvexPolygon2 {
    let sums: Vec<Point2> = p
        .vertices()
        .iter()
        .flat_map(|a| q.vertices().iter().map(move |b| a + b))
        .collect();
    convex_hull_2d(&sums).expect("sums of finite vertices are finite")
}

/// The body `mu·A ⊕ (1-mu)·B`.
#[derive(Debug, Clone)]
pub struct InterpolationSpec {
    pub a: ConvexPolytope3,
    pub b: ConvexPolytope3,
    pub mu: f64,
}

impl InterpolationSpec {
    pub fn new(a: ConvexPolytope3, b: ConvexPolytope3, mu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::invalid(format!("interpolation coefficient {mu} outside [0, 1]")));
        }
        Ok(InterpolationSpec { a, b, mu })
    }
}

pub fn interpolate(spec: &InterpolationSpec) -> ConvexPolytope3 {
    interpolate_bodies(&spec.a, &spec.b, spec.mu)
}

pub(crate) fn interpolate_bodies(a: &ConvexPolytope3, b: &ConvexPolytope3, mu: f64) -> ConvexPolytope3 {
    if mu == 1.0 {
        return a.clone();
    }
    if mu == 0.0 {
        return b.clone();
    }
    minkowski_sum(&a.scale(mu), &b.scale(1.0 - mu))
}

/// The three polytope terms of `V(P ⊕ rB) = V + A r + M r² + (4π/3) r³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteinerData {
    pub volume: f64,
    pub surface_area: f64,
    /// `Σ_edges length · (π - dihedral) / 2`.
    pub edge_term: f64,
}

pub fn steiner_data(p: &ConvexPolytope3) -> Result<SteinerData> {
    if p.is_degenerate() {
        return Err(Error::Degenerate(format!(
            "Steiner data needs a solid polytope, got {:?}",
            p.kind()
        )));
    }
    let facets = p.facets();
    let edge_term = p
        .edges()
        .iter()
        .map(|e| {
            let len = (p.vertices()[e.a] - p.vertices()[e.b]).norm();
            let cos = facets[e.facets.0].normal.dot(&facets[e.facets.1].normal);
            let dihedral = PI - cos.clamp(-1.0, 1.0).acos();
            len * (PI - dihedral) / 2.0
        })
        .sum();
    Ok(SteinerData {
        volume: p.volume(),
        surface_area: p.surface_area(),
        edge_term,
    })
}

impl SteinerData {
    /// Volume of the body thickened by a ball of radius `r`.
    pub fn volume_at(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::invalid(format!("ball radius must be nonnegative, got {r}")));
        }
        Ok(self.volume
            + self.surface_area * r
            + self.edge_term * r * r
            + 4.0 / 3.0 * PI * r * r * r)
    }

    /// Data of the body scaled by `s > 0`.
    pub fn scaled(&self, s: f64) -> SteinerData {
        SteinerData {
            volume: self.volume * s.powi(3),
            surface_area: self.surface_area * s * s,
            edge_term: self.edge_term * s,
        }
    }

    /// Volume of `mu·P ⊕ (1-mu)·ball(radius)` as a cubic in `mu`.
    pub fn interpolation_cubic(&self, radius: f64) -> CubicPolynomial {
        let r = radius;
        CubicPolynomial::from_bernstein([
            4.0 / 3.0 * PI * r.powi(3),
            self.edge_term * r * r / 3.0,
            self.surface_area * r / 3.0,
            self.volume,
        ])
    }
}

pub fn steiner_volume(p: &ConvexPolytope3, r: f64) -> Result<f64> {
    steiner_data(p)?.volume_at(r)
}
