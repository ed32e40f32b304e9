use std::collections::HashMap;
use std::f64::consts::PI;

use super::{convex_hull_2d, convex_hull_3d, ConvexPolygon2, ConvexPolytope3, Point2, Point3};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Vertices of the reference tetrahedron with unit edges: base in the
/// `z = 0` plane, apex above the base centroid.
pub const UNIT_TETRA_VERTICES: [[f64; 3]; 4] = [
    [0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0],
    [0.5, SQRT3 / 2.0, 0.0],
    [0.5, SQRT3 / 6.0, 0.816_496_580_927_726], // sqrt(2/3)
];

pub fn unit_tetrahedron() -> ConvexPolytope3 {
    let pts: Vec<Point3> = UNIT_TETRA_VERTICES.iter().map(|v| Point3::from(*v)).collect();
    convex_hull_3d(&pts).expect("reference tetrahedron")
}

/// The cube `[0,1]^3`.
pub fn unit_cube() -> ConvexPolytope3 {
    let pts: Vec<Point3> = (0..8)
        .map(|i| Point3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64))
        .collect();
    convex_hull_3d(&pts).expect("unit cube")
}

pub fn segment(a: Point3, b: Point3) -> ConvexPolytope3 {
    convex_hull_3d(&[a, b]).expect("finite endpoints")
}

/// Sphere approximation by repeated 4-to-1 subdivision of the icosahedron,
/// with all vertices on the sphere of the given radius (so the polytope is
/// inscribed). Three subdivisions give 642 vertices.
pub fn icosphere(subdivisions: u32, radius: f64) -> ConvexPolytope3 {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Point3> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .iter()
    .map(|v| Point3::from(*v).normalize())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<Point3>| {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                verts.push(((verts[a] + verts[b]) * 0.5).normalize());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    let pts: Vec<Point3> = verts.iter().map(|v| v * radius).collect();
    convex_hull_3d(&pts).expect("icosphere")
}

/// Regular `n`-gon inscribed in the circle of radius `r` about the origin,
/// first vertex on the positive x-axis.
pub fn regular_polygon(n: usize, r: f64) -> ConvexPolygon2 {
    assert!(n >= 3, "a regular polygon needs at least 3 vertices");
    let pts: Vec<Point2> = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            Point2::new(r * a.cos(), r * a.sin())
        })
        .collect();
    convex_hull_2d(&pts).expect("regular polygon")
}

/// Equilateral triangle with vertices `(0,0)`, `(s,0)`, `(s/2, s√3/2)`.
pub fn equilateral_triangle(side: f64) -> ConvexPolygon2 {
    convex_hull_2d(&[
        Point2::new(0.0, 0.0),
        Point2::new(side, 0.0),
        Point2::new(side / 2.0, side * SQRT3 / 2.0),
    ])
    .expect("triangle")
}

pub fn unit_square() -> ConvexPolygon2 {
    convex_hull_2d(&[
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0),
        Point2::new(0.0, 1.0),
    ])
    .expect("square")
}
