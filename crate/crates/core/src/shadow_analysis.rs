//! Inscribed disks of shadows, translation containment of one shadow in
//! another, and the sphere-wide questions built on them: the smallest
//! shadow inradius of a body, whether one body hides behind another, and
//! the largest scale at which it still does.
//!
//! Containment `A + t ⊆ B` is decided on the erosion
//! `B ⊖ A = {t : n_i·t <= b_i - h_A(n_i)}` over the edges `(n_i, b_i)` of
//! `B`. Its Chebyshev radius, the *clearance*, is positive when `A` fits
//! with room to spare, zero when it fits exactly, and minus the violation
//! depth when it does not fit.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::directions::{refine_minimum, DirectionGrid, RefineConfig};
use crate::geometry::{ConvexPolygon2, ConvexPolytope3, HalfPlane, Point2};
use crate::lp::{self, LpOutcome};
use crate::projection::{orthonormal_basis, shadow, shadow_in_basis, Direction3};

/// Clearances within this band of zero are reported as [`FitStatus::Boundary`].
pub const BOUNDARY_DEPTH: f64 = 1e-7;

const SCALE_CAP: f64 = 1e9;
const TIE_SLACK: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: [f64; 2],
    pub radius: f64,
}

fn lp_rows(hps: &[HalfPlane], weight: impl Fn(usize) -> f64) -> Vec<[f64; 3]> {
    hps.iter()
        .enumerate()
        .map(|(i, h)| [h.normal.x, h.normal.y, weight(i)])
        .collect()
}

/// Radius of the largest inscribed disk; zero for points and segments.
pub fn chebyshev_radius(p: &ConvexPolygon2) -> f64 {
    if p.is_degenerate() {
        return 0.0;
    }
    let hps = p.halfplanes();
    let rhs: Vec<f64> = hps.iter().map(|h| h.offset).collect();
    match lp::maximize([0.0, 0.0, 1.0], &lp_rows(&hps, |_| 1.0), &rhs) {
        LpOutcome::Optimal(s) => s.objective.max(0.0),
        _ => 0.0,
    }
}

/// Largest inscribed disk. When the center is not unique the
/// lexicographically smallest optimal center is returned. Degenerate
/// polygons give radius zero at their smallest vertex.
pub fn chebyshev_disk(p: &ConvexPolygon2) -> Disk {
    if p.is_degenerate() {
        let v = p.vertices()[0];
        return Disk {
            center: [v.x, v.y],
            radius: 0.0,
        };
    }
    let hps = p.halfplanes();
    let mut rows = lp_rows(&hps, |_| 1.0);
    let mut rhs: Vec<f64> = hps.iter().map(|h| h.offset).collect();
    let LpOutcome::Optimal(first) = lp::maximize([0.0, 0.0, 1.0], &rows, &rhs) else {
        unreachable!("a proper polygon has a bounded inscribed disk")
    };
    let radius = first.objective;
    let mut center = [first.x[0], first.x[1]];

    rows.push([0.0, 0.0, -1.0]);
    rhs.push(-(radius - TIE_SLACK));
    if let LpOutcome::Optimal(s) = lp::maximize([-1.0, 0.0, 0.0], &rows, &rhs) {
        let x = s.x[0];
        rows.push([1.0, 0.0, 0.0]);
        rhs.push(x + TIE_SLACK);
        if let LpOutcome::Optimal(s) = lp::maximize([0.0, -1.0, 0.0], &rows, &rhs) {
            center = [s.x[0], s.x[1]];
        }
    }
    Disk {
        center,
        radius: radius.max(0.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitStatus {
    Fits,
    Boundary,
    Outside,
}

impl FitStatus {
    fn from_clearance(c: f64) -> Self {
        if c > BOUNDARY_DEPTH {
            FitStatus::Fits
        } else if c >= -BOUNDARY_DEPTH {
            FitStatus::Boundary
        } else {
            FitStatus::Outside
        }
    }

    /// Fits or fits exactly.
    pub fn fits(self) -> bool {
        self != FitStatus::Outside
    }
}

/// Farkas certificate that no translate fits: nonnegative weights on edges
/// of the container with `Σ w_i n_i = 0` and `Σ w_i (b_i - h_A(n_i)) < 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// `(edge index of the container, weight)`, weights summing to one.
    pub weights: Vec<(usize, f64)>,
    /// Outward normal of the heaviest edge in the certificate.
    pub violated_normal: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Containment {
    pub status: FitStatus,
    /// Chebyshev radius of the erosion; negative means violation depth.
    pub clearance: f64,
    /// Chebyshev center of the erosion. When the status is `Outside` this
    /// is the least-violating translation.
    pub translation: [f64; 2],
    /// Largest `λ >= 0` such that some translate of `λA` fits.
    pub fit_scale: f64,
    pub certificate: Option<Certificate>,
}

/// The edges of a container shadow together with the support values of a
/// hider shadow along their normals. Everything the containment LPs need,
/// so that sweeps over a scale factor reuse one projection.
#[derive(Debug, Clone)]
pub struct ShadowPair {
    halfplanes: Vec<HalfPlane>,
    hider_support: Vec<f64>,
}

impl ShadowPair {
    pub fn new(hider: &ConvexPolygon2, container: &ConvexPolygon2) -> Self {
        let halfplanes = container.halfplanes();
        let hider_support = halfplanes.iter().map(|h| hider.support(&h.normal)).collect();
        ShadowPair {
            halfplanes,
            hider_support,
        }
    }

    fn clearance_lp(&self, scale: f64) -> lp::LpSolution {
        let rows = lp_rows(&self.halfplanes, |_| 1.0);
        let rhs: Vec<f64> = self
            .halfplanes
            .iter()
            .zip(&self.hider_support)
            .map(|(h, s)| h.offset - scale * s)
            .collect();
        match lp::maximize([0.0, 0.0, 1.0], &rows, &rhs) {
            LpOutcome::Optimal(s) => s,
            other => unreachable!("erosion LP is bounded and feasible: {other:?}"),
        }
    }

    /// Clearance of the hider scaled by `scale`.
    pub fn clearance(&self, scale: f64) -> f64 {
        self.clearance_lp(scale).objective
    }

    /// Largest scale of the hider that still fits by translation.
    pub fn fit_scale(&self) -> f64 {
        let mut rows = lp_rows(&self.halfplanes, |i| self.hider_support[i]);
        let mut rhs: Vec<f64> = self.halfplanes.iter().map(|h| h.offset).collect();
        rows.push([0.0, 0.0, -1.0]);
        rhs.push(0.0);
        rows.push([0.0, 0.0, 1.0]);
        rhs.push(SCALE_CAP);
        match lp::maximize([0.0, 0.0, 1.0], &rows, &rhs) {
            LpOutcome::Optimal(s) => s.objective.max(0.0),
            _ => 0.0,
        }
    }

    pub fn containment(&self, scale: f64) -> Containment {
        let sol = self.clearance_lp(scale);
        let status = FitStatus::from_clearance(sol.objective);
        let certificate = (status == FitStatus::Outside).then(|| {
            let total: f64 = sol.multipliers.iter().map(|(_, w)| w).sum();
            let weights: Vec<(usize, f64)> =
                sol.multipliers.iter().map(|&(i, w)| (i, w / total)).collect();
            let heaviest = weights
                .iter()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map(|&(i, _)| i)
                .unwrap_or(0);
            let n = self.halfplanes[heaviest].normal;
            Certificate {
                weights,
                violated_normal: [n.x, n.y],
            }
        });
        Containment {
            status,
            clearance: sol.objective,
            translation: [sol.x[0], sol.x[1]],
            fit_scale: self.fit_scale(),
            certificate,
        }
    }
}

/// Full containment analysis of `a` inside `b` by translation.
pub fn containment(a: &ConvexPolygon2, b: &ConvexPolygon2) -> Containment {
    ShadowPair::new(a, b).containment(1.0)
}

/// `Some(t)` with `a + t ⊆ b` when a translate fits (exact fits included),
/// `None` otherwise.
pub fn fits_in_translate(a: &ConvexPolygon2, b: &ConvexPolygon2) -> Option<Point2> {
    let c = containment(a, b);
    c.status
        .fits()
        .then(|| Point2::new(c.translation[0], c.translation[1]))
}

fn shadows_pair(a: &ConvexPolytope3, b: &ConvexPolytope3, u: &Direction3) -> ShadowPair {
    let (e1, e2) = orthonormal_basis(u);
    ShadowPair::new(&shadow_in_basis(a, &e1, &e2), &shadow_in_basis(b, &e1, &e2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionRecord {
    pub direction: Direction3,
    pub status: FitStatus,
    pub clearance: f64,
    pub fit_scale: f64,
    /// Witness translation in the shadow plane basis, when the shadow fits.
    pub translation: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HideVerdict {
    /// Every shadow fits with clearance above the boundary band.
    Hides,
    /// Every shadow fits, at least one only within the boundary band.
    Boundary,
    Fails,
}

impl HideVerdict {
    pub fn hides(self) -> bool {
        self != HideVerdict::Fails
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HideReport {
    pub records: Vec<DirectionRecord>,
    pub verdict: HideVerdict,
    /// Index into `records` of the smallest clearance (largest violation).
    pub worst: usize,
    pub failures: usize,
}

impl HideReport {
    pub fn worst_record(&self) -> &DirectionRecord {
        &self.records[self.worst]
    }
}

/// Checks `a` against `b` along every direction of `grid`.
///
/// The worst direction is the one of largest absolute violation depth
/// (smallest clearance). The relative measure `fit_scale` is recorded per
/// direction as well.
pub fn hides_behind(a: &ConvexPolytope3, b: &ConvexPolytope3, grid: &DirectionGrid) -> HideReport {
    let records: Vec<DirectionRecord> = grid
        .directions
        .par_iter()
        .map(|u| {
            let c = shadows_pair(a, b, u).containment(1.0);
            DirectionRecord {
                direction: *u,
                status: c.status,
                clearance: c.clearance,
                fit_scale: c.fit_scale,
                translation: c.status.fits().then_some(c.translation),
            }
        })
        .collect();
    summarize(records)
}

fn summarize(records: Vec<DirectionRecord>) -> HideReport {
    let worst = records
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.clearance.total_cmp(&y.1.clearance).then(x.0.cmp(&y.0)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let failures = records.iter().filter(|r| r.status == FitStatus::Outside).count();
    let verdict = if failures > 0 {
        HideVerdict::Fails
    } else if records.iter().any(|r| r.status == FitStatus::Boundary) {
        HideVerdict::Boundary
    } else {
        HideVerdict::Hides
    };
    HideReport {
        records,
        verdict,
        worst,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InradiusResult {
    pub direction: Direction3,
    pub center: [f64; 2],
    pub radius: f64,
    pub refined: bool,
    /// Smallest radius on the grid itself, before refinement.
    pub grid_minimum: f64,
    pub grid_direction: Direction3,
}

fn smallest_indices(values: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    idx.truncate(k);
    idx
}

/// Smallest inscribed-disk radius over all shadows of `p`.
///
/// Every grid direction is evaluated, then the best `refine.candidates` are
/// polished by local search. Pass `None` to skip refinement.
pub fn min_inradius(
    p: &ConvexPolytope3,
    grid: &DirectionGrid,
    refine: Option<&RefineConfig>,
) -> InradiusResult {
    let radius_at = |u: &Direction3| chebyshev_radius(&shadow(p, u));
    let radii: Vec<f64> = grid.directions.par_iter().map(radius_at).collect();
    let order = smallest_indices(&radii, refine.map_or(1, |r| r.candidates.max(1)));
    let grid_best = order[0];

    let (direction, radius) = match refine {
        None => (grid.directions[grid_best], radii[grid_best]),
        Some(cfg) => order
            .par_iter()
            .map(|&i| refine_minimum(radius_at, grid.directions[i], cfg))
            .collect::<Vec<_>>()
            .into_iter()
            .fold((grid.directions[grid_best], radii[grid_best]), |best, cur| {
                if cur.1 < best.1 {
                    cur
                } else {
                    best
                }
            }),
    };
    let disk = chebyshev_disk(&shadow(p, &direction));
    InradiusResult {
        direction,
        center: disk.center,
        radius,
        refined: refine.is_some(),
        grid_minimum: radii[grid_best],
        grid_direction: grid.directions[grid_best],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BisectConfig {
    pub tolerance: f64,
    /// Upper limit on the scale search.
    pub max_scale: f64,
    pub refine: Option<RefineConfig>,
}

impl Default for BisectConfig {
    fn default() -> Self {
        BisectConfig {
            tolerance: 1e-6,
            max_scale: 1e6,
            refine: Some(RefineConfig::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HideScaleResult {
    /// Largest `x` found by bisection with `x·A` hiding behind `B`.
    pub scale: f64,
    /// Direction of the smallest per-direction fit scale.
    pub worst_direction: Direction3,
    /// `min_u fit_scale(u)` over the grid plus refined directions: the same
    /// quantity computed without bisection.
    pub direct_scale: f64,
    pub directions_checked: usize,
    pub bisection_steps: usize,
}

/// Largest scale at which `a` hides behind `b` over `grid`.
///
/// The per-direction fit scales are computed first and the worst directions
/// refined by local search; the refined directions join the grid. The scale
/// itself comes from bisection on the hide predicate over that augmented
/// set, which is monotone because containment is preserved under shrinking.
pub fn max_hide_scale(
    a: &ConvexPolytope3,
    b: &ConvexPolytope3,
    grid: &DirectionGrid,
    cfg: &BisectConfig,
) -> HideScaleResult {
    let scale_at = |u: &Direction3| shadows_pair(a, b, u).fit_scale();
    let scales: Vec<f64> = grid.directions.par_iter().map(scale_at).collect();

    let mut extra = Vec::new();
    let first = smallest_indices(&scales, 1)[0];
    let mut worst_dir = grid.directions[first];
    let mut direct = scales[first];
    if let Some(rcfg) = &cfg.refine {
        let picks = smallest_indices(&scales, rcfg.candidates.max(1));
        let refined: Vec<(Direction3, f64)> = picks
            .par_iter()
            .map(|&i| refine_minimum(scale_at, grid.directions[i], rcfg))
            .collect();
        for (d, s) in refined {
            extra.push(d);
            if s < direct {
                direct = s;
                worst_dir = d;
            }
        }
    }

    let all = grid.with_extra(&extra);
    let pairs: Vec<ShadowPair> = all.directions.par_iter().map(|u| shadows_pair(a, b, u)).collect();
    let hides_at = |x: f64| {
        pairs
            .par_iter()
            .all(|p| p.clearance(x) >= -BOUNDARY_DEPTH)
    };

    let mut steps = 0;
    let (mut lo, mut hi) = (0.0, 1.0);
    while hides_at(hi) {
        lo = hi;
        hi *= 2.0;
        steps += 1;
        if hi > cfg.max_scale {
            return HideScaleResult {
                scale: lo,
                worst_direction: worst_dir,
                direct_scale: direct,
                directions_checked: all.len(),
                bisection_steps: steps,
            };
        }
    }
    while hi - lo > cfg.tolerance {
        let mid = 0.5 * (lo + hi);
        if hides_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    HideScaleResult {
        scale: lo,
        worst_direction: worst_dir,
        direct_scale: direct,
        directions_checked: all.len(),
        bisection_steps: steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{equilateral_triangle, regular_polygon, unit_square, unit_tetrahedron, Vector2};

    const S3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn square_disk() {
        let d = chebyshev_disk(&unit_square());
        assert!((d.radius - 0.5).abs() < 1e-14);
        assert!((d.center[0] - 0.5).abs() < 1e-9 && (d.center[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn triangle_inradius() {
        let d = chebyshev_disk(&equilateral_triangle(1.0));
        assert!((d.radius - S3 / 6.0).abs() < 1e-14);
        assert!((chebyshev_radius(&equilateral_triangle(1.0)) - S3 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn rectangle_center_tie_break_is_lexicographic() {
        let rect = ConvexPolygon2::from_points(&[
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let d = chebyshev_disk(&rect);
        assert!((d.radius - 0.5).abs() < 1e-12);
        assert!((d.center[0] - 0.5).abs() < 1e-9, "center {:?}", d.center);
        assert!((d.center[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn degenerate_disk_is_zero() {
        let seg = ConvexPolygon2::from_points(&[Point2::new(1.0, 1.0), Point2::new(0.0, 0.0)]).unwrap();
        let d = chebyshev_disk(&seg);
        assert_eq!(d.radius, 0.0);
        assert_eq!(d.center, [0.0, 0.0]);
    }

    #[test]
    fn square_fits_in_double_square() {
        let big = unit_square().scale(2.0);
        let t = fits_in_translate(&unit_square(), &big).expect("fits");
        for v in unit_square().vertices() {
            assert!(big.contains(&(v + t), 1e-12));
        }
        let c = containment(&unit_square(), &big);
        assert_eq!(c.status, FitStatus::Fits);
        assert!((c.clearance - 0.5).abs() < 1e-12);
        assert!((c.fit_scale - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inverted_triangle_limits() {
        let tri = equilateral_triangle(1.0);
        let half = tri.reflect().scale(0.5);
        let c = containment(&half, &tri);
        assert_eq!(c.status, FitStatus::Boundary);
        assert!(fits_in_translate(&half, &tri).is_some());

        let over = tri.reflect().scale(0.51);
        assert!(fits_in_translate(&over, &tri).is_none());
        let c = containment(&over, &tri);
        assert_eq!(c.status, FitStatus::Outside);
        assert!((c.fit_scale - 0.5 / 0.51).abs() < 1e-12);

        // Farkas: Σ w n = 0 and Σ w (b - h) < 0
        let cert = c.certificate.expect("certificate");
        let hps = tri.halfplanes();
        let mut sum_n = Vector2::zeros();
        let mut sum_b = 0.0;
        for &(i, w) in &cert.weights {
            assert!(w >= 0.0);
            sum_n += hps[i].normal * w;
            sum_b += w * (hps[i].offset - over.support(&hps[i].normal));
        }
        assert!(sum_n.norm() < 1e-12);
        assert!(sum_b < 0.0);
        assert!((sum_b - c.clearance).abs() < 1e-12);
    }

    #[test]
    fn disk_behind_triangle_by_widths() {
        let disk = regular_polygon(256, S3 / 4.0);
        let tri = equilateral_triangle(1.0);
        for k in 0..360 {
            let theta = (k as f64).to_radians();
            assert!(disk.width(theta) <= tri.width(theta) + 1e-12);
        }
    }

    #[test]
    fn body_hides_behind_itself() {
        let t = unit_tetrahedron();
        let grid = DirectionGrid::fibonacci(300, 0).unwrap();
        let rep = hides_behind(&t, &t, &grid);
        assert!(rep.verdict.hides());
        assert_eq!(rep.failures, 0);
        for r in &rep.records {
            let tr = r.translation.unwrap();
            assert!(tr[0].abs() < 1e-9 && tr[1].abs() < 1e-9);
        }
    }
}
