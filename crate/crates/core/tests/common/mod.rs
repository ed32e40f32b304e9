#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use umbra::geometry::{convex_hull_2d, convex_hull_3d, ConvexPolygon2, ConvexPolytope3, Point2, Point3, Vector3};
use umbra::projection::Direction3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point_in_ball(rng: &mut ChaCha8Rng) -> Vector3 {
    loop {
        let v = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if v.norm_squared() <= 1.0 {
            return v;
        }
    }
}

pub fn random_direction(rng: &mut ChaCha8Rng) -> Direction3 {
    loop {
        let v = point_in_ball(rng);
        if v.norm() > 1e-3 {
            return Direction3::new(v).unwrap();
        }
    }
}

/// Hull of 6 to 14 points in a unit ball around a random center.
pub fn random_polytope(rng: &mut ChaCha8Rng) -> ConvexPolytope3 {
    loop {
        let center = point_in_ball(rng);
        let n = rng.gen_range(6..=14);
        let pts: Vec<Point3> = (0..n).map(|_| center + point_in_ball(rng)).collect();
        let p = convex_hull_3d(&pts).unwrap();
        if p.volume() > 0.05 {
            return p;
        }
    }
}

pub fn random_polygon(rng: &mut ChaCha8Rng) -> ConvexPolygon2 {
    loop {
        let n = rng.gen_range(3..=12);
        let pts: Vec<Point2> = (0..n)
            .map(|_| Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let p = convex_hull_2d(&pts).unwrap();
        if p.area() > 0.05 {
            return p;
        }
    }
}

use umbra::directions::DirectionGrid;
use umbra::minkowski::minkowski_sum;
use umbra::mixed_volumes::fit_with_residual;
use umbra::shadow_analysis::{hides_behind, max_hide_scale, BisectConfig};

/// Hull of a random cloud, rebuilt from its own vertices, must not change.
pub fn hull_idempotence(seed: u64, clouds: usize) -> Result<(), String> {
    let mut r = rng(seed);
    for i in 0..clouds {
        let n = r.gen_range(4..60);
        let pts: Vec<Point3> = (0..n).map(|_| Point3::from(point_in_ball(&mut r) * 3.0)).collect();
        let h = convex_hull_3d(&pts).unwrap();
        let again = convex_hull_3d(h.vertices()).unwrap();
        if h.vertices() != again.vertices() || h.facets().len() != again.facets().len() {
            return Err(format!("3D cloud {i} changed on a second hull"));
        }
        let pts: Vec<Point2> = pts.iter().map(|p| Point2::new(p.x, p.y)).collect();
        let h = convex_hull_2d(&pts).unwrap();
        if convex_hull_2d(h.vertices()).unwrap() != h {
            return Err(format!("2D cloud {i} changed on a second hull"));
        }
    }
    Ok(())
}

/// Largest `|h_{P⊕Q}(u) - h_P(u) - h_Q(u)|` over random pairs and directions.
pub fn support_additivity_error(seed: u64, pairs: usize, directions: usize) -> f64 {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let (p, q) = (random_polytope(&mut r), random_polytope(&mut r));
        let s = minkowski_sum(&p, &q);
        for _ in 0..directions {
            let u = *random_direction(&mut r).vector();
            worst = worst.max((s.support(&u) - p.support(&u) - q.support(&u)).abs());
        }
    }
    worst
}

/// Largest validation residual of the interpolation cubic over random pairs.
pub fn max_fit_residual(seed: u64, pairs: usize) -> f64 {
    let mut r = rng(seed);
    (0..pairs)
        .map(|_| {
            let (a, b) = (random_polytope(&mut r), random_polytope(&mut r));
            fit_with_residual(&a, &b).unwrap().residual
        })
        .fold(0.0, f64::max)
}

/// If `A` and `B` each hide behind `C`, so does every `μA ⊕ (1-μ)B`.
pub fn interpolation_hiding(seed: u64, triples: usize) -> Result<(), String> {
    let mut r = rng(seed);
    let grid = DirectionGrid::fibonacci(300, 0).unwrap();
    let bisect = BisectConfig {
        refine: None,
        ..BisectConfig::default()
    };
    for i in 0..triples {
        let c = random_polytope(&mut r);
        let mut hider = || {
            let raw = random_polytope(&mut r);
            let s = max_hide_scale(&raw, &c, &grid, &bisect).scale;
            raw.scale(0.9 * s)
        };
        let (a, b) = (hider(), hider());
        if !hides_behind(&a, &c, &grid).verdict.hides() || !hides_behind(&b, &c, &grid).verdict.hides() {
            return Err(format!("triple {i}: scaled hider does not hide"));
        }
        for mu in [0.25, 0.5, 0.75] {
            let body = minkowski_sum(&a.scale(mu), &b.scale(1.0 - mu));
            let report = hides_behind(&body, &c, &grid);
            if !report.verdict.hides() {
                return Err(format!("triple {i}, mu {mu}: {} failing directions", report.failures));
            }
        }
    }
    Ok(())
}

/// `V(tsA ⊕ (1-t)B)` strictly increases with `s`.
pub fn volume_grows_with_hider_scale(seed: u64, pairs: usize) -> Result<(), String> {
    let mut r = rng(seed);
    for i in 0..pairs {
        let (a, b) = (random_polytope(&mut r), random_polytope(&mut r));
        for t in [0.3, 0.5, 0.7] {
            let vols: Vec<f64> = [0.2, 0.4, 0.6, 0.8, 1.0]
                .iter()
                .map(|s| minkowski_sum(&a.scale(t * s), &b.scale(1.0 - t)).volume())
                .collect();
            if vols.windows(2).any(|w| w[1] <= w[0]) {
                return Err(format!("pair {i}, t {t}: {vols:?}"));
            }
        }
    }
    Ok(())
}
