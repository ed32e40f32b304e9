//! Incremental 3D convex hull over a triangle mesh with edge adjacency.
//!
//! Points are inserted farthest-first. A point closer than `eps` to every
//! current face plane is treated as inside; otherwise the visible region is
//! grown from the most visible face across shared edges, removed, and the
//! horizon is coned to the new point.

use std::collections::{HashMap, VecDeque};

use super::Point3;

pub(crate) enum RawHull {
    Point(usize),
    Segment(usize, usize),
    /// Affinely flat input; carries the plane normal.
    Flat(nalgebra::Vector3<f64>),
    /// Outward-oriented triangles indexing the input points.
    Solid(Vec<[usize; 3]>),
}

struct Face {
    v: [usize; 3],
    normal: Point3,
    offset: f64,
    alive: bool,
}

impl Face {
    fn new(points: &[Point3], v: [usize; 3]) -> Face {
        let [a, b, c] = v.map(|i| points[i]);
        let n = (b - a).cross(&(c - a));
        let len = n.norm();
        let normal = if len > 0.0 { n / len } else { n };
        Face {
            v,
            normal,
            offset: normal.dot(&a),
            alive: true,
        }
    }

    fn distance(&self, p: &Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    fn edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.v;
        [(a, b), (b, c), (c, a)]
    }
}

fn farthest_by(points: &[Point3], f: impl Fn(&Point3) -> f64) -> (usize, f64) {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, f(p)))
        .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
}

pub(crate) fn hull(points: &[Point3], eps: f64) -> RawHull {
    let i0 = points
        .iter()
        .enumerate()
        .min_by(|a, b| {
            a.1.x
                .total_cmp(&b.1.x)
                .then(a.1.y.total_cmp(&b.1.y))
                .then(a.1.z.total_cmp(&b.1.z))
        })
        .map(|(i, _)| i)
        .expect("non-empty input");
    let p0 = points[i0];

    let (i1, d1) = farthest_by(points, |p| (p - p0).norm());
    if d1 <= eps {
        return RawHull::Point(i0);
    }
    let axis = (points[i1] - p0) / d1;

    let (i2, d2) = farthest_by(points, |p| (p - p0).cross(&axis).norm());
    if d2 <= eps {
        let (lo, _) = farthest_by(points, |p| -(p - p0).dot(&axis));
        let (hi, _) = farthest_by(points, |p| (p - p0).dot(&axis));
        return RawHull::Segment(lo, hi);
    }
    let plane_n = (points[i1] - p0).cross(&(points[i2] - p0)).normalize();

    let (i3, d3) = farthest_by(points, |p| (p - p0).dot(&plane_n).abs());
    if d3 <= eps {
        return RawHull::Flat(plane_n);
    }

    let seed = [i0, i1, i2, i3];
    let centroid = seed.iter().map(|&i| points[i]).sum::<Point3>() / 4.0;

    let mut faces: Vec<Face> = Vec::new();
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();

    let push_face = |faces: &mut Vec<Face>,
                         edge_owner: &mut HashMap<(usize, usize), usize>,
                         v: [usize; 3]| {
        let f = Face::new(points, v);
        let id = faces.len();
        for e in f.edges() {
            edge_owner.insert(e, id);
        }
        faces.push(f);
    };

    for (a, b, c) in [(i0, i1, i2), (i0, i1, i3), (i0, i2, i3), (i1, i2, i3)] {
        let f = Face::new(points, [a, b, c]);
        let v = if f.distance(&centroid) > 0.0 { [a, c, b] } else { [a, b, c] };
        push_face(&mut faces, &mut edge_owner, v);
    }

    let mut order: Vec<usize> = (0..points.len()).filter(|i| !seed.contains(i)).collect();
    let dist_c: Vec<f64> = points.iter().map(|p| (p - centroid).norm_squared()).collect();
    order.sort_by(|&a, &b| dist_c[b].total_cmp(&dist_c[a]).then(a.cmp(&b)));

    let mut alive_count = 4usize;
    let mut visible = Vec::new();
    let mut queue = VecDeque::new();
    let mut mark: Vec<u32> = Vec::new();
    let mut stamp = 0u32;

    for &pi in &order {
        let p = points[pi];
        let (best, best_d) = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive)
            .map(|(i, f)| (i, f.distance(&p)))
            .fold((usize::MAX, eps), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best == usize::MAX || best_d <= eps {
            continue;
        }

        stamp += 1;
        mark.resize(faces.len(), 0);
        visible.clear();
        queue.clear();
        queue.push_back(best);
        mark[best] = stamp;
        while let Some(f) = queue.pop_front() {
            visible.push(f);
            for (a, b) in faces[f].edges() {
                let g = edge_owner[&(b, a)];
                if mark[g] != stamp && faces[g].distance(&p) > eps {
                    mark[g] = stamp;
                    queue.push_back(g);
                }
            }
        }

        let mut horizon = Vec::new();
        for &f in &visible {
            for (a, b) in faces[f].edges() {
                let g = edge_owner[&(b, a)];
                if mark[g] != stamp {
                    horizon.push((a, b));
                }
            }
        }
        for &f in &visible {
            faces[f].alive = false;
            for e in faces[f].edges() {
                edge_owner.remove(&e);
            }
        }
        alive_count -= visible.len();
        for &(a, b) in &horizon {
            push_face(&mut faces, &mut edge_owner, [a, b, pi]);
        }
        alive_count += horizon.len();

        if faces.len() > 4 * alive_count + 64 {
            compact(&mut faces, &mut edge_owner);
        }
    }

    RawHull::Solid(faces.iter().filter(|f| f.alive).map(|f| f.v).collect())
}

fn compact(faces: &mut Vec<Face>, edge_owner: &mut HashMap<(usize, usize), usize>) {
    faces.retain(|f| f.alive);
    edge_owner.clear();
    for (id, f) in faces.iter().enumerate() {
        for e in f.edges() {
            edge_owner.insert(e, id);
        }
    }
}
