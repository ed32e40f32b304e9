use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{ensure_finite2, Point2, Tolerance, Vector2};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonKind {
    Point,
    Segment,
    Polygon,
}

/// A closed half-plane `normal · x <= offset` with unit `normal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub normal: Vector2,
    pub offset: f64,
}

/// Convex polygon in canonical form.
///
/// Vertices run counterclockwise starting at the lexicographically smallest
/// one, with no duplicate or collinear vertices. Points and segments are
/// allowed and flagged through [`PolygonKind`]; a segment stores its two
/// endpoints, a point its single location.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon2 {
    vertices: Vec<Point2>,
    kind: PolygonKind,
}

fn lex(a: &Point2, b: &Point2) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

fn cross(o: &Point2, a: &Point2, b: &Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Convex hull with the default tolerance.
pub fn convex_hull_2d(points: &[Point2]) -> Result<ConvexPolygon2> {
    convex_hull_2d_with(points, Tolerance::DEFAULT)
}

/// Andrew's monotone chain. A middle point is kept only if it lies more than
/// `eps_geom` to the left of the chord through its neighbours.
pub fn convex_hull_2d_with(points: &[Point2], tol: Tolerance) -> Result<ConvexPolygon2> {
    ensure_finite2(points)?;
    let eps = tol.eps_geom;

    let mut pts = points.to_vec();
    pts.sort_by(lex);
    pts.dedup_by(|a, b| (*a - *b).norm() <= eps);

    if pts.len() == 1 {
        return Ok(ConvexPolygon2::point(pts[0]));
    }

    let keeps_turn = |o: &Point2, a: &Point2, b: &Point2| {
        let chord = (b - o).norm();
        chord > 0.0 && cross(o, a, b) > eps * chord
    };

    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for p in &pts {
        while hull.len() >= 2 && !keeps_turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && !keeps_turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p)
        {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();

    let diameter = hull
        .iter()
        .map(|p| (p - hull[0]).norm())
        .fold(0.0, f64::max);
    if diameter <= eps {
        return Ok(ConvexPolygon2::point(hull[0]));
    }
    if hull.len() <= 2 {
        let a = pts[0];
        let b = *pts.last().unwrap();
        return Ok(ConvexPolygon2 {
            vertices: vec![a, b],
            kind: PolygonKind::Segment,
        });
    }
    Ok(ConvexPolygon2 {
        vertices: hull,
        kind: PolygonKind::Polygon,
    })
}

impl ConvexPolygon2 {
    pub fn from_points(points: &[Point2]) -> Result<Self> {
        convex_hull_2d(points)
    }

    fn point(p: Point2) -> Self {
        ConvexPolygon2 {
            vertices: vec![p],
            kind: PolygonKind::Point,
        }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn kind(&self) -> PolygonKind {
        self.kind
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind != PolygonKind::Polygon
    }

    /// Shoelace area; zero for points and segments.
    pub fn area(&self) -> f64 {
        if self.is_degenerate() {
            return 0.0;
        }
        let v = &self.vertices;
        let o = v[0];
        let twice: f64 = (1..v.len() - 1)
            .map(|i| cross(&o, &v[i], &v[i + 1]))
            .sum();
        0.5 * twice
    }

    /// Boundary length. A segment counts both sides, so its perimeter is
    /// twice its length.
    pub fn perimeter(&self) -> f64 {
        match self.kind {
            PolygonKind::Point => 0.0,
            PolygonKind::Segment => 2.0 * (self.vertices[1] - self.vertices[0]).norm(),
            PolygonKind::Polygon => self.edges().map(|(a, b)| (b - a).norm()).sum(),
        }
    }

    /// Edges as (start, end) pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        let count = if self.kind == PolygonKind::Polygon { n } else { 0 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Support function `h(u) = max_v v·u`.
    pub fn support(&self, u: &Vector2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Length of the polygon's projection onto the line at angle `theta`,
    /// i.e. `h(u) + h(-u)` for `u = (cos θ, sin θ)`.
    pub fn width(&self, theta: f64) -> f64 {
        let u = Vector2::new(theta.cos(), theta.sin());
        self.support(&u) + self.support(&-u)
    }

    /// Half-plane description `{x : n_i·x <= b_i}`.
    ///
    /// Degenerate polygons get a closed description too: a segment is cut
    /// out by four half-planes (two of them with opposite normals and equal
    /// offsets), a point by four axis-aligned ones.
    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        let v = &self.vertices;
        let box_around = |p: Point2, d: Vector2| {
            let n = Vector2::new(-d.y, d.x);
            vec![
                HalfPlane { normal: d, offset: d.dot(&p) },
                HalfPlane { normal: -d, offset: -d.dot(&p) },
                HalfPlane { normal: n, offset: n.dot(&p) },
                HalfPlane { normal: -n, offset: -n.dot(&p) },
            ]
        };
        match self.kind {
            PolygonKind::Point => box_around(v[0], Vector2::x()),
            PolygonKind::Segment => {
                let d = (v[1] - v[0]).normalize();
                let n = Vector2::new(-d.y, d.x);
                vec![
                    HalfPlane { normal: d, offset: d.dot(&v[1]) },
                    HalfPlane { normal: -d, offset: -d.dot(&v[0]) },
                    HalfPlane { normal: n, offset: n.dot(&v[0]) },
                    HalfPlane { normal: -n, offset: -n.dot(&v[0]) },
                ]
            }
            PolygonKind::Polygon => self
                .edges()
                .map(|(a, b)| {
                    let d = b - a;
                    let normal = Vector2::new(d.y, -d.x).normalize();
                    HalfPlane {
                        normal,
                        offset: normal.dot(&a),
                    }
                })
                .collect(),
        }
    }

    /// Whether `p` satisfies every half-plane within `tol`.
    pub fn contains(&self, p: &Point2, tol: f64) -> bool {
        self.halfplanes()
            .iter()
            .all(|h| h.normal.dot(p) <= h.offset + tol)
    }

    pub fn translate(&self, t: &Vector2) -> Self {
        self.map_vertices(|v| v + t)
    }

    /// Scale about the origin; `s` must be positive to keep orientation.
    pub fn scale(&self, s: f64) -> Self {
        assert!(s > 0.0, "scale factor must be positive");
        self.map_vertices(|v| v * s)
    }

    /// Point reflection through the origin.
    pub fn reflect(&self) -> Self {
        let pts: Vec<Point2> = self.vertices.iter().map(|v| -v).collect();
        convex_hull_2d(&pts).expect("finite vertices")
    }

    fn map_vertices(&self, f: impl Fn(&Point2) -> Point2) -> Self {
        let pts: Vec<Point2> = self.vertices.iter().map(f).collect();
        convex_hull_2d(&pts).expect("finite vertices")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn interior_point_removed() {
        let hull = convex_hull_2d(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(0.2, 0.2)]).unwrap();
        assert_eq!(hull.vertices(), &[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]);
        assert_eq!(hull.kind(), PolygonKind::Polygon);
    }

    #[test]
    fn shuffled_square_is_ccw() {
        let hull =
            convex_hull_2d(&[p(1.0, 1.0), p(0.0, 0.0), p(0.0, 1.0), p(1.0, 0.0)]).unwrap();
        assert_eq!(
            hull.vertices(),
            &[p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]
        );
        assert!((hull.area() - 1.0).abs() < 1e-15);
        assert!((hull.perimeter() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_vertices_merged() {
        let hull = convex_hull_2d(&[
            p(0.0, 0.0),
            p(0.5, 1e-12),
            p(1.0, 0.0),
            p(1.0, 1.0),
            p(0.0, 1.0),
        ])
        .unwrap();
        assert_eq!(hull.len(), 4);
    }

    #[test]
    fn degenerate_inputs_are_flagged() {
        let pt = convex_hull_2d(&[p(0.3, 0.3), p(0.3, 0.3 + 1e-12)]).unwrap();
        assert_eq!(pt.kind(), PolygonKind::Point);
        assert_eq!(pt.area(), 0.0);

        let seg = convex_hull_2d(&[p(1.0, 1.0), p(0.0, 0.0), p(0.5, 0.5)]).unwrap();
        assert_eq!(seg.kind(), PolygonKind::Segment);
        assert_eq!(seg.vertices(), &[p(0.0, 0.0), p(1.0, 1.0)]);
        assert_eq!(seg.area(), 0.0);
        assert!((seg.perimeter() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(convex_hull_2d(&[p(f64::NAN, 0.0)]).is_err());
        assert!(convex_hull_2d(&[]).is_err());
    }

    #[test]
    fn triangle_widths() {
        let tri = convex_hull_2d(&[p(0.0, 0.0), p(1.0, 0.0), p(0.5, 3f64.sqrt() / 2.0)]).unwrap();
        assert!((tri.area() - 3f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((tri.perimeter() - 3.0).abs() < 1e-15);
        // along an edge: the full side
        assert!((tri.width(0.0) - 1.0).abs() < 1e-15);
        // perpendicular to an edge: the height
        assert!((tri.width(PI / 2.0) - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn halfplanes_contain_vertices() {
        let tri = convex_hull_2d(&[p(0.0, 0.0), p(2.0, 0.0), p(0.0, 1.0)]).unwrap();
        for h in tri.halfplanes() {
            assert!((h.normal.norm() - 1.0).abs() < 1e-15);
            for v in tri.vertices() {
                assert!(h.normal.dot(v) <= h.offset + 1e-12);
            }
        }
        assert!(tri.contains(&p(0.5, 0.25), 0.0));
        assert!(!tri.contains(&p(1.5, 0.5), 1e-9));

        let seg = convex_hull_2d(&[p(0.0, 0.0), p(1.0, 0.0)]).unwrap();
        assert!(seg.contains(&p(0.5, 0.0), 1e-12));
        assert!(!seg.contains(&p(0.5, 0.1), 1e-12));
    }
}
