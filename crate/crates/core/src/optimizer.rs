//! Maximizing interpolation volumes.
//!
//! Volumes of Minkowski interpolations are cubics in the interpolation
//! coefficient, so the maximum over `[0, 1]` is attained at an endpoint or
//! at a root of the derivative quadratic. Both worked examples reduce to
//! that: a tetrahedron thickened by a ball of the smallest shadow inradius,
//! and a tetrahedron combined with its half-size inverse.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{unit_tetrahedron, ConvexPolytope3};
use crate::minkowski::steiner_data;
use crate::mixed_volumes::{fit_interpolation_cubic, tetra_tetra_ratio_polynomial};
use crate::polynomial::CubicPolynomial;

/// Smallest inradius over all shadows of the unit-edge tetrahedron,
/// `(√6 - √2)/4 = sin 15°`.
pub const TETRA_MIN_SHADOW_INRADIUS: f64 = 0.258_819_045_102_520_76;

/// Largest scale of `-△` hiding behind `△`.
pub const TETRA_INVERSE_HIDE_SCALE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub argmax: f64,
    pub max_value: f64,
    /// Roots of the derivative inside `[0, 1]`, ascending.
    pub stationary_points: Vec<f64>,
    pub boundary_checked: bool,
}

fn derivative_roots(p: &CubicPolynomial) -> Vec<f64> {
    let [d0, d1, d2] = p.derivative();
    let scale = d0.abs().max(d1.abs()).max(d2.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    let tiny = 1e-14 * scale;
    let mut roots = Vec::new();
    if d2.abs() <= tiny {
        if d1.abs() > tiny {
            roots.push(-d0 / d1);
        }
    } else {
        let disc = d1 * d1 - 4.0 * d2 * d0;
        if disc >= 0.0 {
            let q = -0.5 * (d1 + d1.signum() * disc.sqrt());
            if q != 0.0 {
                roots.push(q / d2);
                roots.push(d0 / q);
            } else {
                roots.push(0.0);
            }
        }
    }
    // One Newton step on the derivative tidies cancellation in the formula.
    roots
        .into_iter()
        .map(|r| {
            let slope = 2.0 * d2 * r + d1;
            if slope != 0.0 {
                r - p.eval_derivative(r) / slope
            } else {
                r
            }
        })
        .collect()
}

/// Maximum of `p` over `[0, 1]`; ties go to the smaller argument.
pub fn maximize_cubic_on_unit_interval(p: &CubicPolynomial) -> OptimizationResult {
    let mut stationary: Vec<f64> = derivative_roots(p)
        .into_iter()
        .filter(|r| (-1e-14..=1.0 + 1e-14).contains(r))
        .map(|r| r.clamp(0.0, 1.0))
        .collect();
    stationary.sort_by(f64::total_cmp);
    stationary.dedup();

    let mut candidates = vec![0.0];
    candidates.extend(&stationary);
    candidates.push(1.0);

    let (mut argmax, mut max_value) = (0.0, p.eval(0.0));
    for &t in &candidates[1..] {
        let v = p.eval(t);
        if v > max_value + 1e-14 * max_value.abs().max(1.0) {
            argmax = t;
            max_value = v;
        }
    }
    OptimizationResult {
        argmax,
        max_value,
        stationary_points: stationary,
        boundary_checked: true,
    }
}

/// The optimum of an interpolation family together with its volume ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationOptimum {
    /// Volume of the family as a cubic in the container coefficient.
    pub polynomial: CubicPolynomial,
    pub optimum: OptimizationResult,
    /// Volume of the container body.
    pub reference_volume: f64,
    pub max_volume: f64,
    pub ratio: f64,
}

impl InterpolationOptimum {
    fn from_volume_cubic(polynomial: CubicPolynomial, reference_volume: f64) -> Self {
        let optimum = maximize_cubic_on_unit_interval(&polynomial);
        InterpolationOptimum {
            polynomial,
            max_volume: optimum.max_value,
            ratio: optimum.max_value / reference_volume,
            optimum,
            reference_volume,
        }
    }
}

/// Best `μ` for `μP ⊕ (1-μ)·ball(radius)` through the Steiner cubic.
pub fn optimize_polytope_ball(p: &ConvexPolytope3, radius: f64) -> Result<InterpolationOptimum> {
    let data = steiner_data(p)?;
    Ok(InterpolationOptimum::from_volume_cubic(
        data.interpolation_cubic(radius),
        data.volume,
    ))
}

/// `μ△ ⊕ (1-μ)·ball((√6-√2)/4)`, the ball being the largest one whose
/// shadows fit in every shadow of `△`.
pub fn optimize_tetra_ball() -> InterpolationOptimum {
    optimize_polytope_ball(&unit_tetrahedron(), TETRA_MIN_SHADOW_INRADIUS)
        .expect("the unit tetrahedron is solid")
}

/// `α△ ⊕ ((1-α)/2)(-△)`.
pub fn optimize_tetra_tetra() -> InterpolationOptimum {
    let v = unit_tetrahedron().volume();
    InterpolationOptimum::from_volume_cubic(tetra_tetra_ratio_polynomial().scale(v), v)
}

/// `(1 + 2√14)/11`, the stationary point of the tetra-tetra ratio cubic.
pub fn tetra_tetra_closed_form_argmax() -> f64 {
    (1.0 + 2.0 * 14f64.sqrt()) / 11.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioCurve {
    /// `(μ, V(μA ⊕ (1-μ)·s·B) / V(A))`.
    pub samples: Vec<(f64, f64)>,
    pub polynomial: CubicPolynomial,
    pub optimum: OptimizationResult,
}

/// Samples the fitted volume cubic of `μA ⊕ (1-μ)·hide_scale·B`, divided by
/// `V(A)`, at `n` evenly spaced `μ`.
pub fn ratio_curve(
    a: &ConvexPolytope3,
    b: &ConvexPolytope3,
    n: usize,
    hide_scale: f64,
) -> Result<RatioCurve> {
    if n < 2 {
        return Err(Error::invalid("ratio curve needs at least two samples"));
    }
    if !(hide_scale > 0.0) {
        return Err(Error::invalid("hide scale must be positive"));
    }
    let v = a.volume();
    if !(v > 0.0) {
        return Err(Error::Degenerate("container body has no volume".into()));
    }
    let polynomial = fit_interpolation_cubic(a, &b.scale(hide_scale))?.scale(1.0 / v);
    Ok(curve_from_polynomial(polynomial, n))
}

pub fn curve_from_polynomial(polynomial: CubicPolynomial, n: usize) -> RatioCurve {
    let samples = (0..n)
        .map(|i| {
            let mu = i as f64 / (n - 1) as f64;
            (mu, polynomial.eval(mu))
        })
        .collect();
    RatioCurve {
        samples,
        optimum: maximize_cubic_on_unit_interval(&polynomial),
        polynomial,
    }
}

/// Which denominator to use under the square root of the legacy closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicandReading {
    /// `8√2 - 3√6 + c9 π + 18α - 9√3 α²`
    Quadratic,
    /// `8√2 - 3√6 + c9 π + (18 - 9√3) α`, matching the outer denominator.
    Linear,
}

/// Constants `c1..c9` of a closed-form expression that has been quoted for
/// the tetra-ball optimum, with `α = arccos(1/3)`:
///
/// ```text
/// μ* = (3√2 - √6 + c1 π + (12 - 6√3) α) / (8√2 - 3√6 + c2 π + (18 - 9√3) α)
///    + sqrt((c3 + c4 π + c5 π² + c6 α + c7 π α + c8 α²) / D)
/// ```
///
/// Neither reading of `D` reproduces the optimum of the Steiner cubic, so
/// the table is kept for lookup only; [`optimize_tetra_ball`] is the
/// source of truth.
pub fn legacy_closed_form_constants() -> [f64; 9] {
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    [
        6.0 * s3 + 3.0 * s6 - 5.0 * s2 - 12.0,
        9.0 * s3 + 3.0 * s6 - 5.0 * s2 - 18.0,
        24.0 - 12.0 * s3 + 18.0 * s6,
        38.0 - 33.0 * s2 - 22.0 * s3,
        63.0 - 36.0 * s3,
        33.0 * s2 - 18.0 * s6,
        72.0 * s3 - 126.0,
        63.0 - 36.0 * s3,
        9.0 * s3 + 3.0 * s6 - 18.0 - 5.0 * s2,
    ]
}

/// Evaluates the legacy closed form; `None` when the radicand is negative.
pub fn legacy_closed_form(reading: RadicandReading) -> Option<f64> {
    let c = legacy_closed_form_constants();
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let a = (1.0f64 / 3.0).acos();
    let lead = (3.0 * s2 - s6 + c[0] * PI + (12.0 - 6.0 * s3) * a)
        / (8.0 * s2 - 3.0 * s6 + c[1] * PI + (18.0 - 9.0 * s3) * a);
    let num = c[2] + c[3] * PI + c[4] * PI * PI + c[5] * a + c[6] * PI * a + c[7] * a * a;
    let den = match reading {
        RadicandReading::Quadratic => 8.0 * s2 - 3.0 * s6 + c[8] * PI + 18.0 * a - 9.0 * s3 * a * a,
        RadicandReading::Linear => 8.0 * s2 - 3.0 * s6 + c[8] * PI + (18.0 - 9.0 * s3) * a,
    };
    let radicand = num / den;
    (radicand >= 0.0).then(|| lead + radicand.sqrt())
}
