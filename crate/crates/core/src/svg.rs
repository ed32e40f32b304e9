//! Standalone SVG renderings of shadows and ratio curves.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::ConvexPolygon2;
use crate::io::write_text;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;
const CURVE_WIDTH: f64 = 600.0;

fn span(lo: f64, hi: f64) -> f64 {
    if hi - lo > 0.0 {
        hi - lo
    } else {
        1.0
    }
}

/// Polygon drawn with a uniform scale, `y` pointing up.
pub fn polygon_svg(p: &ConvexPolygon2) -> Result<String> {
    if p.is_empty() {
        return Err(Error::invalid("polygon has no vertices"));
    }
    let xs = p.vertices().iter().map(|v| v.x);
    let ys = p.vertices().iter().map(|v| v.y);
    let (x0, x1) = (xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
    let (y0, y1) = (ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
    let s = (SIZE - 2.0 * MARGIN) / span(x0, x1).max(span(y0, y1));

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(
        out,
        "<!-- viewport: px = {MARGIN} + (x - {x0:.9}) * {s:.9}, py = {} - (y - {y0:.9}) * {s:.9} -->",
        SIZE - MARGIN
    )
    .unwrap();
    let mut d = String::new();
    for (i, v) in p.vertices().iter().enumerate() {
        let px = MARGIN + (v.x - x0) * s;
        let py = SIZE - MARGIN - (v.y - y0) * s;
        write!(d, "{}{px:.4},{py:.4} ", if i == 0 { "M" } else { "L" }).unwrap();
    }
    d.push('Z');
    writeln!(out, r##"<path d="{d}" fill="#c8d7ea" stroke="#1f3b63" stroke-width="1.5"/>"##).unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

/// Polyline through `(x, y)` samples with the largest sample marked.
pub fn curve_svg(samples: &[(f64, f64)]) -> Result<String> {
    if samples.is_empty() {
        return Err(Error::invalid("curve has no samples"));
    }
    if samples.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::invalid("curve samples must be finite"));
    }
    let x0 = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let x1 = samples.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
    let y0 = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let y1 = samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let sx = (CURVE_WIDTH - 2.0 * MARGIN) / span(x0, x1);
    let sy = (SIZE - 2.0 * MARGIN) / span(y0, y1);
    let map = |x: f64, y: f64| (MARGIN + (x - x0) * sx, SIZE - MARGIN - (y - y0) * sy);

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CURVE_WIDTH}" height="{SIZE}" viewBox="0 0 {CURVE_WIDTH} {SIZE}">"#).unwrap();
    writeln!(
        out,
        "<!-- viewport: px = {MARGIN} + (x - {x0:.9}) * {sx:.9}, py = {} - (y - {y0:.9}) * {sy:.9} -->",
        SIZE - MARGIN
    )
    .unwrap();
    let points: Vec<String> = samples
        .iter()
        .map(|&(x, y)| {
            let (px, py) = map(x, y);
            format!("{px:.4},{py:.4}")
        })
        .collect();
    writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f3b63" stroke-width="1.5"/>"##,
        points.join(" ")
    )
    .unwrap();
    let best = samples
        .iter()
        .fold(samples[0], |b, &s| if s.1 > b.1 { s } else { b });
    let (px, py) = map(best.0, best.1);
    writeln!(out, r##"<circle cx="{px:.4}" cy="{py:.4}" r="3" fill="#b03a2e"/>"##).unwrap();
    writeln!(out, "<!-- max at x = {:.9}, y = {:.9} -->", best.0, best.1).unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_svg_polygon(p: &ConvexPolygon2, path: &Path) -> Result<()> {
    write_text(path, &polygon_svg(p)?)
}

pub fn emit_curve_svg(samples: &[(f64, f64)], path: &Path) -> Result<()> {
    write_text(path, &curve_svg(samples)?)
}
