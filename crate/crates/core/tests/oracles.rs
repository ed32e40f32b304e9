//! Results checked against independent computations.

mod common;

use common::rng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use umbra::directions::{DirectionGrid, RefineConfig};
use umbra::geometry::{icosphere, unit_cube, unit_tetrahedron, Point3, Vector3};
use umbra::minkowski::{minkowski_sum, steiner_data, steiner_volume};
use umbra::mixed_volumes::fit_interpolation_cubic;
use umbra::optimizer::{ratio_curve, optimize_tetra_ball, optimize_tetra_tetra, TETRA_MIN_SHADOW_INRADIUS};
use umbra::projection::{shadow, Direction3};
use umbra::shadow_analysis::{chebyshev_radius, max_hide_scale, min_inradius, BisectConfig};

/// Facet inequalities of the hull of `pts`, found by testing every triple.
fn brute_force_halfspaces(pts: &[Point3]) -> Vec<(Vector3, f64)> {
    let mut planes = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let n = (pts[j] - pts[i]).cross(&(pts[k] - pts[i]));
                if n.norm() < 1e-12 {
                    continue;
                }
                let n = n.normalize();
                let d = n.dot(&pts[i]);
                let side: Vec<f64> = pts.iter().map(|p| n.dot(p) - d).collect();
                if side.iter().all(|&s| s <= 1e-9) {
                    planes.push((n, d));
                } else if side.iter().all(|&s| s >= -1e-9) {
                    planes.push((-n, -d));
                }
            }
        }
    }
    planes
}

#[test]
fn difference_body_volume_by_sampling() {
    let t = unit_tetrahedron();
    let pts: Vec<Point3> = t
        .vertices()
        .iter()
        .flat_map(|a| t.vertices().iter().map(move |b| a - b))
        .collect();
    let planes = brute_force_halfspaces(&pts);
    let lo = pts.iter().fold(Vector3::repeat(f64::INFINITY), |m, p| m.inf(p));
    let hi = pts.iter().fold(Vector3::repeat(f64::NEG_INFINITY), |m, p| m.sup(p));
    let box_volume = (hi - lo).product();

    const CHUNKS: u64 = 100;
    const PER_CHUNK: u64 = 100_000;
    let inside: u64 = (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let mut r = ChaCha8Rng::seed_from_u64(1000 + c);
            (0..PER_CHUNK)
                .filter(|_| {
                    let p = Vector3::new(
                        r.gen_range(lo.x..hi.x),
                        r.gen_range(lo.y..hi.y),
                        r.gen_range(lo.z..hi.z),
                    );
                    planes.iter().all(|(n, d)| n.dot(&p) <= *d)
                })
                .count() as u64
        })
        .sum();
    let estimate = box_volume * inside as f64 / (CHUNKS * PER_CHUNK) as f64;
    let exact = 20.0 * t.volume();
    assert!((estimate / exact - 1.0).abs() < 0.005, "estimate {estimate}, expected {exact}");
    assert!((minkowski_sum(&t, &t.reflect()).volume() - exact).abs() < 1e-12);
}

#[test]
fn cube_min_inradius_against_dense_grid() {
    let cube = unit_cube();
    let dense = DirectionGrid::fibonacci(1_000_000, 0).unwrap();
    let brute = dense
        .directions
        .par_iter()
        .map(|u| chebyshev_radius(&shadow(&cube, u)))
        .reduce(|| f64::INFINITY, f64::min);
    let grid = DirectionGrid::fibonacci(20_000, 0).unwrap();
    let found = min_inradius(&cube, &grid, Some(&RefineConfig::default()));
    assert!(found.radius <= brute + 1e-12, "{} vs {brute}", found.radius);
    assert!(brute - found.radius < 1e-4, "{} vs {brute}", found.radius);
}

#[test]
fn tetra_shadow_along_an_edge() {
    let t = unit_tetrahedron();
    let v = t.vertices();
    let edge = Direction3::new(v[2] - v[1]).unwrap();
    let r = chebyshev_radius(&shadow(&t, &edge));
    assert!((r - TETRA_MIN_SHADOW_INRADIUS).abs() < 1e-12);
    assert!((TETRA_MIN_SHADOW_INRADIUS - (6f64.sqrt() - 2f64.sqrt()) / 4.0).abs() < 1e-16);
}

#[test]
fn ball_shadows_are_nearly_round() {
    let ball = icosphere(3, 1.0);
    let grid = DirectionGrid::fibonacci(2_000, 0).unwrap();
    let radii: Vec<f64> = grid.directions.iter().map(|u| chebyshev_radius(&shadow(&ball, u))).collect();
    let lo = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = radii.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    assert!(hi <= 1.0 + 1e-12);
    assert!(lo > 0.99, "smallest shadow inradius {lo}");
    let found = min_inradius(&ball, &grid, Some(&RefineConfig::default()));
    assert!((found.radius - lo).abs() < 0.01);
}

#[test]
fn ball_hide_scale_equals_tetra_min_inradius() {
    let ball = icosphere(3, 1.0);
    let grid = DirectionGrid::fibonacci(20_000, 0).unwrap();
    let r = max_hide_scale(&ball, &unit_tetrahedron(), &grid, &BisectConfig::default());
    let rel = r.scale / TETRA_MIN_SHADOW_INRADIUS - 1.0;
    assert!((0.0..0.01).contains(&rel), "scale {}", r.scale);
}

#[test]
fn steiner_against_hull_of_thickened_polytope() {
    for p in [unit_cube(), unit_tetrahedron()] {
        for r in [0.1, 0.3] {
            let hull = minkowski_sum(&p, &icosphere(3, r)).volume();
            let formula = steiner_volume(&p, r).unwrap();
            assert!(hull <= formula);
            assert!((formula - hull) / formula < 0.01, "r {r}: {hull} vs {formula}");
        }
    }
}

#[test]
fn tetra_ball_cubic_against_polytope_ball() {
    let t = unit_tetrahedron();
    let fitted = fit_interpolation_cubic(&t, &icosphere(3, TETRA_MIN_SHADOW_INRADIUS)).unwrap();
    let exact = steiner_data(&t).unwrap().interpolation_cubic(TETRA_MIN_SHADOW_INRADIUS);
    for mu in [0.0, 0.25, 0.5, 0.684, 1.0] {
        let (f, e) = (fitted.eval(mu), exact.eval(mu));
        assert!(f <= e + 1e-12 && (e - f) / e < 0.01, "mu {mu}: {f} vs {e}");
    }
}

#[test]
fn tetra_tetra_curve_peaks_at_optimum() {
    let t = unit_tetrahedron();
    let c = ratio_curve(&t, &t.reflect(), 101, 0.5).unwrap();
    let (mu, v) = c.samples.iter().copied().fold((0.0, f64::NEG_INFINITY), |b, s| if s.1 > b.1 { s } else { b });
    let opt = optimize_tetra_tetra();
    assert!((mu - opt.optimum.argmax).abs() <= 0.01);
    assert!((v - 1.1634).abs() < 1e-4);
    assert!((c.optimum.argmax - opt.optimum.argmax).abs() < 1e-9);
}

#[test]
fn tetra_ball_curve_peaks_near_optimum() {
    let t = unit_tetrahedron();
    let c = ratio_curve(&t, &icosphere(3, 1.0), 101, TETRA_MIN_SHADOW_INRADIUS).unwrap();
    let (mu, _) = c.samples.iter().copied().fold((0.0, f64::NEG_INFINITY), |b, s| if s.1 > b.1 { s } else { b });
    assert!((mu - optimize_tetra_ball().optimum.argmax).abs() <= 0.02, "peak at {mu}");
}

#[test]
fn identical_cubes_give_flat_curve() {
    let cube = unit_cube();
    for n in [2, 7, 101] {
        let c = ratio_curve(&cube, &cube, n, 1.0).unwrap();
        assert_eq!(c.samples.len(), n);
        assert!(c.samples.iter().all(|&(_, v)| (v - 1.0).abs() < 1e-12));
    }
}

#[test]
fn random_hull_volume_against_sampling() {
    let mut r = rng(20);
    let p = common::random_polytope(&mut r);
    let planes: Vec<(Vector3, f64)> = p.facets().iter().map(|f| (f.normal, f.offset)).collect();
    let lo = p.vertices().iter().fold(Vector3::repeat(f64::INFINITY), |m, q| m.inf(q));
    let hi = p.vertices().iter().fold(Vector3::repeat(f64::NEG_INFINITY), |m, q| m.sup(q));
    let n = 2_000_000;
    let inside = (0..n)
        .filter(|_| {
            let q = Vector3::new(r.gen_range(lo.x..hi.x), r.gen_range(lo.y..hi.y), r.gen_range(lo.z..hi.z));
            planes.iter().all(|(nv, d)| nv.dot(&q) <= *d)
        })
        .count();
    let estimate = (hi - lo).product() * inside as f64 / n as f64;
    assert!((estimate / p.volume() - 1.0).abs() < 0.01, "{estimate} vs {}", p.volume());
}
