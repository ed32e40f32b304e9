//! Body files and result tables.
//!
//! A body file is JSON of the form `{"vertices": [[x, y, z], ...]}`, or
//! with two coordinates per vertex for a planar body. Only the convex hull
//! of the listed points matters.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull_2d, convex_hull_3d, ConvexPolygon2, ConvexPolytope3, Point2, Point3};
use crate::scenarios::ScenarioResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Solid(ConvexPolytope3),
    Planar(ConvexPolygon2),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BodyFile {
    vertices: Vec<Vec<f64>>,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses body JSON; `path` only labels errors.
pub fn parse_body(text: &str, path: &Path) -> Result<Body> {
    let file: BodyFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let dim = match file.vertices.first() {
        None => return Err(Error::invalid(format!("{}: no vertices", path.display()))),
        Some(v) => v.len(),
    };
    if dim != 2 && dim != 3 {
        return Err(Error::invalid(format!(
            "{}: vertices need 2 or 3 coordinates, got {dim}",
            path.display()
        )));
    }
    if let Some(i) = file.vertices.iter().position(|v| v.len() != dim) {
        return Err(Error::invalid(format!(
            "{}: vertex {i} has {} coordinates, expected {dim}",
            path.display(),
            file.vertices[i].len()
        )));
    }
    if dim == 3 {
        let pts: Vec<Point3> = file.vertices.iter().map(|v| Point3::new(v[0], v[1], v[2])).collect();
        Ok(Body::Solid(convex_hull_3d(&pts)?))
    } else {
        let pts: Vec<Point2> = file.vertices.iter().map(|v| Point2::new(v[0], v[1])).collect();
        Ok(Body::Planar(convex_hull_2d(&pts)?))
    }
}

pub fn read_body(path: &Path) -> Result<Body> {
    parse_body(&read_text(path)?, path)
}

/// Reads a body that must be three-dimensional.
pub fn read_polytope(path: &Path) -> Result<ConvexPolytope3> {
    match read_body(path)? {
        Body::Solid(p) => Ok(p),
        Body::Planar(_) => Err(Error::invalid(format!(
            "{}: expected 3D vertices",
            path.display()
        ))),
    }
}

pub fn polytope_json(p: &ConvexPolytope3) -> String {
    let file = BodyFile {
        vertices: p.vertices().iter().map(|v| vec![v.x, v.y, v.z]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("vertex lists serialize")
}

pub fn polygon_json(p: &ConvexPolygon2) -> String {
    let file = BodyFile {
        vertices: p.vertices().iter().map(|v| vec![v.x, v.y]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("vertex lists serialize")
}

/// Scenario rows as CSV. Keys are qualified by scenario name.
pub fn scenarios_csv(results: &[ScenarioResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "computed", "expected", "tolerance", "tag", "pass"])?;
    for r in results {
        for row in &r.rows {
            w.write_record([
                format!("{}.{}", r.name, row.key),
                format!("{:.17e}", row.computed),
                format!("{:.17e}", row.expected),
                format!("{:e}", row.tolerance),
                row.kind.as_str().to_string(),
                row.pass.to_string(),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `(mu, value)` samples as CSV.
pub fn curve_csv(samples: &[(f64, f64)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["mu", "ratio"])?;
    for (mu, v) in samples {
        w.write_record([format!("{mu}"), format!("{v:.17e}")])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
