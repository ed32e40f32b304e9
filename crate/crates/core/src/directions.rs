//! Discretizations of the direction sphere and local search on it.
//!
//! Shadows along `u` and `-u` are mirror images, so grids keep one
//! representative per antipodal pair.

use nalgebra::{Quaternion, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projection::{orthonormal_basis, Direction3};
use crate::geometry::Vector3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridGenerator {
    Fibonacci,
    Octahedral,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionGrid {
    pub directions: Vec<Direction3>,
    pub generator: GridGenerator,
    pub seed: u64,
}

fn upper(v: &Vector3) -> bool {
    v.z > 0.0 || (v.z == 0.0 && (v.y > 0.0 || (v.y == 0.0 && v.x > 0.0)))
}

impl DirectionGrid {
    /// `count` points of a Fibonacci spiral on the upper hemisphere, equal
    /// area bands in `z`. A non-zero `seed` applies a seeded random rotation
    /// to the whole set; rotation keeps it antipode-free.
    pub fn fibonacci(count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("direction grid needs at least one direction"));
        }
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let rotation = (seed != 0).then(|| random_rotation(seed));
        let directions = (0..count)
            .map(|i| {
                let z = 1.0 - (i as f64 + 0.5) / count as f64;
                let r = (1.0 - z * z).sqrt();
                let phi = golden * i as f64;
                let v = Vector3::new(r * phi.cos(), r * phi.sin(), z);
                let v = match &rotation {
                    Some(q) => q * v,
                    None => v,
                };
                Direction3::new_unchecked(v.normalize())
            })
            .collect();
        Ok(DirectionGrid {
            directions,
            generator: GridGenerator::Fibonacci,
            seed,
        })
    }

    /// Octahedron faces split into `level²` triangles each, projected to the
    /// sphere, upper hemisphere kept.
    pub fn octahedral(level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::invalid("octahedral level must be at least 1"));
        }
        let n = level as i64;
        let mut directions = Vec::new();
        for i in -n..=n {
            for j in -(n - i.abs())..=(n - i.abs()) {
                let k = n - i.abs() - j.abs();
                for z in if k == 0 { vec![0] } else { vec![k, -k] } {
                    let v = Vector3::new(i as f64, j as f64, z as f64);
                    if upper(&v) {
                        directions.push(Direction3::new_unchecked(v.normalize()));
                    }
                }
            }
        }
        Ok(DirectionGrid {
            directions,
            generator: GridGenerator::Octahedral,
            seed: 0,
        })
    }

    /// A caller-supplied list; later members of an antipodal or repeated
    /// pair are dropped.
    pub fn explicit(list: Vec<Direction3>) -> Result<Self> {
        let mut directions: Vec<Direction3> = Vec::with_capacity(list.len());
        for d in list {
            if !directions.iter().any(|e| e.vector().dot(d.vector()).abs() > 1.0 - 1e-12) {
                directions.push(d);
            }
        }
        if directions.is_empty() {
            return Err(Error::invalid("direction grid needs at least one direction"));
        }
        Ok(DirectionGrid {
            directions,
            generator: GridGenerator::Explicit,
            seed: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Rough angular spacing: `sqrt(2π / N)` for a hemisphere grid.
    pub fn spacing(&self) -> f64 {
        (2.0 * std::f64::consts::PI / self.len() as f64).sqrt()
    }

    /// A copy with extra directions appended (antipodes of existing members
    /// are skipped).
    pub fn with_extra(&self, extra: &[Direction3]) -> Self {
        let mut out = self.clone();
        for d in extra {
            if !out.directions.iter().any(|e| e.vector().dot(d.vector()).abs() > 1.0 - 1e-15) {
                out.directions.push(*d);
            }
        }
        out
    }
}

fn random_rotation(seed: u64) -> UnitQuaternion<f64> {
    // Shoemake's uniform quaternion
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u1, u2, u3): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
    let tau = std::f64::consts::TAU;
    let q = Quaternion::new(
        (u1).sqrt() * (tau * u3).cos(),
        (1.0 - u1).sqrt() * (tau * u2).sin(),
        (1.0 - u1).sqrt() * (tau * u2).cos(),
        (u1).sqrt() * (tau * u3).sin(),
    );
    UnitQuaternion::from_quaternion(q)
}

/// Local pattern search settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefineConfig {
    /// How many of the best grid directions to polish.
    pub candidates: usize,
    /// Starting step, radians.
    pub initial_step: f64,
    /// Search stops once the step falls below this, radians.
    pub min_step: f64,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig {
            candidates: 8,
            initial_step: 0.02,
            min_step: 1e-7,
        }
    }
}

const PATTERN: usize = 8;
const MAX_ITERATIONS: usize = 20_000;

/// Minimizes `f` over the sphere starting from `start`.
///
/// Compass search in the tangent plane: eight headings per step, move to the
/// best strict improvement, halve the step when none exists. The returned
/// value is never worse than `f(start)`.
pub fn refine_minimum<F>(f: F, start: Direction3, cfg: &RefineConfig) -> (Direction3, f64)
where
    F: Fn(&Direction3) -> f64,
{
    let mut best = start;
    let mut best_val = f(&start);
    let mut step = cfg.initial_step;
    let mut iterations = 0;
    while step >= cfg.min_step && iterations < MAX_ITERATIONS {
        iterations += 1;
        let (e1, e2) = orthonormal_basis(&best);
        let mut improved = None;
        for k in 0..PATTERN {
            let a = std::f64::consts::TAU * k as f64 / PATTERN as f64;
            let v = best.vector() + (e1 * a.cos() + e2 * a.sin()) * step;
            let cand = Direction3::new_unchecked(v.normalize());
            let val = f(&cand);
            if val < improved.map_or(best_val, |(_, v)| v) {
                improved = Some((cand, val));
            }
        }
        match improved {
            Some((d, v)) => {
                best = d;
                best_val = v;
            }
            None => step *= 0.5,
        }
    }
    (best, best_val)
}
