//! Mixed volumes of two bodies read off the volume of their Minkowski
//! interpolation.
//!
//! In three dimensions
//!
//! ```text
//! V(μA ⊕ (1-μ)B) = μ³ V(A) + 3μ²(1-μ) V(A,A,B) + 3μ(1-μ)² V(A,B,B) + (1-μ)³ V(B)
//! ```
//!
//! so four exact hull volumes determine the cubic, and its coefficients in
//! the `μ^k (1-μ)^(3-k)` basis are the mixed volumes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConvexPolytope3;
use crate::minkowski::interpolate_bodies;
use crate::polynomial::CubicPolynomial;

pub const FIT_NODES: [f64; 4] = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
pub const VALIDATION_NODE: f64 = 0.5;
/// Largest accepted disagreement at the validation node, relative to the
/// larger of one and the magnitude of the volumes involved.
pub const FIT_RESIDUAL_LIMIT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedVolumeTriple {
    pub v_aaa: f64,
    pub v_aab: f64,
    pub v_abb: f64,
    pub v_bbb: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicFit {
    pub polynomial: CubicPolynomial,
    /// `|fitted(½) - V(½A ⊕ ½B)|`.
    pub residual: f64,
}

/// Interpolation volume as a fitted cubic plus its validation residual,
/// without enforcing the residual limit.
pub fn fit_with_residual(a: &ConvexPolytope3, b: &ConvexPolytope3) -> Result<CubicFit> {
    let nodes = [FIT_NODES[0], FIT_NODES[1], FIT_NODES[2], FIT_NODES[3], VALIDATION_NODE];
    let vols: Vec<f64> = nodes
        .par_iter()
        .map(|&mu| interpolate_bodies(a, b, mu).volume())
        .collect();
    let polynomial = CubicPolynomial::fit(FIT_NODES, [vols[0], vols[1], vols[2], vols[3]])?;
    let residual = (polynomial.eval(VALIDATION_NODE) - vols[4]).abs();
    Ok(CubicFit {
        polynomial,
        residual,
    })
}

/// Cubic in `μ` through the volumes of `μA ⊕ (1-μ)B` at [`FIT_NODES`],
/// checked at [`VALIDATION_NODE`].
pub fn fit_interpolation_cubic(a: &ConvexPolytope3, b: &ConvexPolytope3) -> Result<CubicPolynomial> {
    let fit = fit_with_residual(a, b)?;
    let scale = fit.polynomial.coeffs.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    let limit = FIT_RESIDUAL_LIMIT * scale;
    if !(fit.residual <= limit) {
        return Err(Error::FitResidual {
            residual: fit.residual,
            limit,
        });
    }
    Ok(fit.polynomial)
}

impl MixedVolumeTriple {
    pub fn from_cubic(p: &CubicPolynomial) -> Self {
        let [b0, b1, b2, b3] = p.to_bernstein();
        MixedVolumeTriple {
            v_aaa: b3,
            v_aab: b2,
            v_abb: b1,
            v_bbb: b0,
        }
    }

    pub fn to_cubic(&self) -> CubicPolynomial {
        CubicPolynomial::from_bernstein([self.v_bbb, self.v_abb, self.v_aab, self.v_aaa])
    }
}

pub fn extract_mixed_volumes(a: &ConvexPolytope3, b: &ConvexPolytope3) -> Result<MixedVolumeTriple> {
    Ok(MixedVolumeTriple::from_cubic(&fit_interpolation_cubic(a, b)?))
}

/// Volume ratio `V(αA ⊕ β B) / V(A)` as a cubic in `α`, where the hider
/// coefficient is tied to the container one by `β = hide_scale·(1-α)`.
/// `ratios` holds `V(A,A,B)`, `V(A,B,B)` and `V(B)` divided by `V(A)`.
pub fn homothetic_ratio_polynomial(ratios: [f64; 3], hide_scale: f64) -> CubicPolynomial {
    let [r_aab, r_abb, r_bbb] = ratios;
    let h = hide_scale;
    CubicPolynomial::from_bernstein([r_bbb * h.powi(3), r_abb * h * h, r_aab * h, 1.0])
}

/// `α³ + 9/2·α²(1-α) + 9/4·α(1-α)² + 1/8·(1-α)³`: the volume of
/// `α△ ⊕ ((1-α)/2)(-△)` over `V(△)`, using `V(△,△,-△) = V(△,-△,-△) = 3V(△)`.
pub fn tetra_tetra_ratio_polynomial() -> CubicPolynomial {
    homothetic_ratio_polynomial([3.0, 3.0, 1.0], 0.5)
}
