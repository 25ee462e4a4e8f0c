//! Side-by-side SVG drawing of a paired triangulation: A on the left,
//! B on the right, with matching labels.

use std::fmt::Write as _;

use crate::empty::IndexTriangle;
use crate::geom::Point;

const PANEL: f64 = 400.0;
const MARGIN: f64 = 30.0;
const GAP: f64 = 40.0;

/// Fill colors cycled over triangles, so corresponding triangles share a
/// color across the two panels.
const FILLS: [&str; 8] = ["#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb", "#fcbba1", "#d9d9d9", "#fff7bc", "#bcbddc"];

struct Frame {
    min_x: i64,
    min_y: i64,
    scale: f64,
    offset: f64,
}

impl Frame {
    fn new(points: &[Point], offset: f64) -> Self {
        let min_x = points.iter().map(|p| p.x).min().unwrap_or(0);
        let max_x = points.iter().map(|p| p.x).max().unwrap_or(0);
        let min_y = points.iter().map(|p| p.y).min().unwrap_or(0);
        let max_y = points.iter().map(|p| p.y).max().unwrap_or(0);
        let extent = (max_x - min_x).max(max_y - min_y).max(1) as f64;
        Frame { min_x, min_y, scale: (PANEL - 2.0 * MARGIN) / extent, offset }
    }

    // y grows upward in the input and downward in SVG
    fn map(&self, p: Point) -> (f64, f64) {
        let x = self.offset + MARGIN + (p.x - self.min_x) as f64 * self.scale;
        let y = PANEL - MARGIN - (p.y - self.min_y) as f64 * self.scale;
        (x, y)
    }
}

fn panel(s: &mut String, side: &str, points: &[Point], tris: &[IndexTriangle], boundary: bool, offset: f64) {
    let f = Frame::new(points, offset);
    let _ = writeln!(s, r#"<g id="side-{side}">"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="18" font-family="sans-serif" font-size="14">{side}</text>"#,
        offset + MARGIN
    );
    for (i, t) in tris.iter().enumerate() {
        let pts: Vec<String> = t
            .labels()
            .iter()
            .map(|&l| {
                let (x, y) = f.map(points[l as usize]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="{}" stroke="#333" stroke-width="1"><title>{t}</title></polygon>"##,
            pts.join(" "),
            FILLS[i % FILLS.len()]
        );
    }
    if boundary && !points.is_empty() {
        let mut d = String::new();
        for (i, &p) in points.iter().enumerate() {
            let (x, y) = f.map(p);
            let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { 'M' } else { 'L' });
        }
        d.push('Z');
        let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="black" stroke-width="2"/>"#);
    }
    for (i, &p) in points.iter().enumerate() {
        let (x, y) = f.map(p);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
            x + 4.0,
            y - 4.0,
            i + 1
        );
    }
    let _ = writeln!(s, "</g>");
}

/// Renders both realizations. `boundary` draws each side's vertex order as
/// a closed outline (for polygon instances). Output depends only on the
/// arguments.
pub fn render_pair(a: &[Point], b: &[Point], tris: &[IndexTriangle], boundary: bool) -> String {
    let mut sorted = tris.to_vec();
    sorted.sort();
    let width = 2.0 * PANEL + GAP;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{PANEL:.0}" viewBox="0 0 {width:.0} {PANEL:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    panel(&mut s, "A", a, &sorted, boundary, 0.0);
    panel(&mut s, "B", b, &sorted, boundary, PANEL + GAP);
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_polygon_per_triangle_per_side() {
        let a = [Point::new(0, 0), Point::new(2, 0), Point::new(2, 2), Point::new(0, 2)];
        let tris = [IndexTriangle::new(0, 2, 3), IndexTriangle::new(0, 1, 2)];
        let svg = render_pair(&a, &a, &tris, false);
        assert_eq!(svg.matches("<polygon").count(), 4);
        for side in svg.split("<g id=").skip(1) {
            assert_eq!(side.matches("<polygon").count(), 2);
        }
        assert!(!svg.contains("<path"));
        assert_eq!(svg, render_pair(&a, &a, &tris, false));
        assert!(render_pair(&a, &a, &tris, true).contains("<path"));
    }
}
