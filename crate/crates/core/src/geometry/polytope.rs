use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::hull3d::{self, RawHull};
use super::{convex_hull_2d_with, ensure_finite3, Point2, Point3, Tolerance, Vector3};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolytopeKind {
    Point,
    Segment,
    /// All points in one plane: a convex polygon in 3-space, zero volume.
    Flat,
    Solid,
}

/// A supporting plane `normal · x = offset` with its vertex loop, ordered
/// counterclockwise when seen from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vector3,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

/// An edge shared by two facets, `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub facets: (usize, usize),
}

/// A convex polytope given by its extreme vertices. Solid polytopes also
/// carry their facets (coplanar hull triangles merged); lower-dimensional
/// ones carry only vertices and a [`PolytopeKind`] flag.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolytope3 {
    vertices: Vec<Point3>,
    facets: Vec<Facet>,
    kind: PolytopeKind,
}

pub fn convex_hull_3d(points: &[Point3]) -> Result<ConvexPolytope3> {
    convex_hull_3d_with(points, Tolerance::DEFAULT)
}

pub fn convex_hull_3d_with(points: &[Point3], tol: Tolerance) -> Result<ConvexPolytope3> {
    ensure_finite3(points)?;
    let eps = tol.eps_geom;
    Ok(match hull3d::hull(points, eps) {
        RawHull::Point(i) => ConvexPolytope3 {
            vertices: vec![points[i]],
            facets: Vec::new(),
            kind: PolytopeKind::Point,
        },
        RawHull::Segment(a, b) => ConvexPolytope3 {
            vertices: vec![points[a], points[b]],
            facets: Vec::new(),
            kind: PolytopeKind::Segment,
        },
        RawHull::Flat(normal) => flat_polygon(points, normal, tol),
        RawHull::Solid(tris) => from_triangles(points, &tris, eps),
    })
}

pub fn polytope_volume(p: &ConvexPolytope3) -> f64 {
    p.volume()
}

fn plane_basis(n: &Vector3) -> (Vector3, Vector3) {
    let axis = if n.x.abs() <= n.y.abs() && n.x.abs() <= n.z.abs() {
        Vector3::x()
    } else if n.y.abs() <= n.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let e1 = (axis - n * axis.dot(n)).normalize();
    (e1, n.cross(&e1))
}

fn flat_polygon(points: &[Point3], normal: Vector3, tol: Tolerance) -> ConvexPolytope3 {
    let (e1, e2) = plane_basis(&normal);
    let flat: Vec<Point2> = points.iter().map(|p| Point2::new(p.dot(&e1), p.dot(&e2))).collect();
    let poly = convex_hull_2d_with(&flat, tol).expect("finite points");
    let vertices = poly
        .vertices()
        .iter()
        .map(|q| {
            let i = flat
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - q).norm().total_cmp(&(b.1 - q).norm()))
                .map(|(i, _)| i)
                .unwrap();
            points[i]
        })
        .collect();
    ConvexPolytope3 {
        vertices,
        facets: Vec::new(),
        kind: PolytopeKind::Flat,
    }
}

fn from_triangles(points: &[Point3], tris: &[[usize; 3]], eps: f64) -> ConvexPolytope3 {
    let plane = |t: &[usize; 3]| {
        let [a, b, c] = t.map(|i| points[i]);
        let n = (b - a).cross(&(c - a)).normalize();
        (n, n.dot(&a))
    };
    let planes: Vec<(Vector3, f64)> = tris.iter().map(plane).collect();

    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (ti, t) in tris.iter().enumerate() {
        for k in 0..3 {
            owner.insert((t[k], t[(k + 1) % 3]), ti);
        }
    }

    // Group coplanar neighbours against the seed triangle's plane so that a
    // gently curved surface cannot chain into one facet.
    let plane_tol = 4.0 * eps;
    let mut group = vec![usize::MAX; tris.len()];
    let mut groups = 0;
    for seed in 0..tris.len() {
        if group[seed] != usize::MAX {
            continue;
        }
        let (n, b) = planes[seed];
        group[seed] = groups;
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            for k in 0..3 {
                let (u, v) = (tris[t][k], tris[t][(k + 1) % 3]);
                let nb = owner[&(v, u)];
                if group[nb] != usize::MAX || planes[nb].0.dot(&n) <= 0.0 {
                    continue;
                }
                if tris[nb].iter().all(|&i| (n.dot(&points[i]) - b).abs() <= plane_tol) {
                    group[nb] = groups;
                    queue.push_back(nb);
                }
            }
        }
        groups += 1;
    }

    let mut boundary: Vec<HashMap<usize, usize>> = vec![HashMap::new(); groups];
    for (ti, t) in tris.iter().enumerate() {
        for k in 0..3 {
            let (u, v) = (t[k], t[(k + 1) % 3]);
            if group[owner[&(v, u)]] != group[ti] {
                boundary[group[ti]].insert(u, v);
            }
        }
    }

    // A genuine vertex sits on at least three facets; anything else lies
    // inside a facet or along an edge.
    let mut incidence: HashMap<usize, usize> = HashMap::new();
    for b in &boundary {
        for &u in b.keys() {
            *incidence.entry(u).or_default() += 1;
        }
    }
    let keep: HashSet<usize> = incidence
        .iter()
        .filter(|(_, &c)| c >= 3)
        .map(|(&u, _)| u)
        .collect();

    let mut kept: Vec<usize> = keep.iter().copied().collect();
    kept.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p.x.total_cmp(&q.x)
            .then(p.y.total_cmp(&q.y))
            .then(p.z.total_cmp(&q.z))
            .then(a.cmp(&b))
    });
    let remap: HashMap<usize, usize> = kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vertices: Vec<Point3> = kept.iter().map(|&i| points[i]).collect();

    let mut facets = Vec::with_capacity(groups);
    for b in &boundary {
        let start = *b.keys().filter(|u| keep.contains(u)).min().expect("facet with a vertex");
        let mut ring = vec![remap[&start]];
        let mut cur = b[&start];
        let mut guard = 0;
        while cur != start && guard <= b.len() {
            if keep.contains(&cur) {
                ring.push(remap[&cur]);
            }
            cur = b[&cur];
            guard += 1;
        }
        if ring.len() < 3 {
            continue;
        }
        // Newell normal of the loop
        let mut n = Vector3::zeros();
        for k in 0..ring.len() {
            let p = vertices[ring[k]];
            let q = vertices[ring[(k + 1) % ring.len()]];
            n += Vector3::new(
                (p.y - q.y) * (p.z + q.z),
                (p.z - q.z) * (p.x + q.x),
                (p.x - q.x) * (p.y + q.y),
            );
        }
        let normal = n.normalize();
        let offset = ring.iter().map(|&i| normal.dot(&vertices[i])).sum::<f64>() / ring.len() as f64;
        facets.push(Facet {
            normal,
            offset,
            vertices: ring,
        });
    }

    ConvexPolytope3 {
        vertices,
        facets,
        kind: PolytopeKind::Solid,
    }
}

impl ConvexPolytope3 {
    pub fn from_points(points: &[Point3]) -> Result<Self> {
        convex_hull_3d(points)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn kind(&self) -> PolytopeKind {
        self.kind
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind != PolytopeKind::Solid
    }

    fn fan(&self) -> impl Iterator<Item = (Point3, Point3, Point3)> + '_ {
        self.facets.iter().flat_map(move |f| {
            let v = &f.vertices;
            (1..v.len() - 1).map(move |k| {
                (
                    self.vertices[v[0]],
                    self.vertices[v[k]],
                    self.vertices[v[k + 1]],
                )
            })
        })
    }

    /// Divergence-theorem volume over facet fans; zero when degenerate.
    pub fn volume(&self) -> f64 {
        if self.is_degenerate() {
            return 0.0;
        }
        let o = self.vertices[0];
        self.fan()
            .map(|(a, b, c)| (a - o).dot(&(b - o).cross(&(c - o))))
            .sum::<f64>()
            / 6.0
    }

    pub fn surface_area(&self) -> f64 {
        self.fan()
            .map(|(a, b, c)| 0.5 * (b - a).cross(&(c - a)).norm())
            .sum()
    }

    /// Edges with their two adjacent facets.
    pub fn edges(&self) -> Vec<Edge> {
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in self.facets.iter().enumerate() {
            for k in 0..f.vertices.len() {
                owner.insert((f.vertices[k], f.vertices[(k + 1) % f.vertices.len()]), fi);
            }
        }
        let mut edges: Vec<Edge> = owner
            .iter()
            .filter(|((a, b), _)| a < b)
            .filter_map(|(&(a, b), &f)| owner.get(&(b, a)).map(|&g| Edge { a, b, facets: (f, g) }))
            .collect();
        edges.sort_by_key(|e| (e.a, e.b));
        edges
    }

    pub fn support(&self, u: &Vector3) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether `p` satisfies every facet inequality within `tol`. Only
    /// meaningful for solids.
    pub fn contains(&self, p: &Point3, tol: f64) -> bool {
        self.facets.iter().all(|f| f.normal.dot(p) <= f.offset + tol)
    }

    pub fn centroid_of_vertices(&self) -> Point3 {
        self.vertices.iter().sum::<Point3>() / self.vertices.len() as f64
    }

    pub fn translate(&self, t: &Vector3) -> Self {
        ConvexPolytope3 {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal,
                    offset: f.offset + f.normal.dot(t),
                    vertices: f.vertices.clone(),
                })
                .collect(),
            kind: self.kind,
        }
    }

    /// Homothety about the origin. Negative factors reflect; zero collapses
    /// to the origin.
    pub fn scale(&self, s: f64) -> Self {
        if s < 0.0 {
            return self.reflect().scale(-s);
        }
        if s == 0.0 {
            return ConvexPolytope3 {
                vertices: vec![Point3::zeros()],
                facets: Vec::new(),
                kind: PolytopeKind::Point,
            };
        }
        ConvexPolytope3 {
            vertices: self.vertices.iter().map(|v| v * s).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal,
                    offset: f.offset * s,
                    vertices: f.vertices.clone(),
                })
                .collect(),
            kind: self.kind,
        }
    }

    /// The inverted body `-K`.
    pub fn reflect(&self) -> Self {
        ConvexPolytope3 {
            vertices: self.vertices.iter().map(|v| -v).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: -f.normal,
                    offset: f.offset,
                    vertices: f.vertices.iter().rev().copied().collect(),
                })
                .collect(),
            kind: self.kind,
        }
    }
}
