//! Plain-text instance and triangle-list files.
//!
//! ```text
//! # comment
//! POINTS 4
//! 0 0 0 0
//! 2 0 2 0
//! ```
//!
//! Each data row is `ax ay bx by`. Labels are row numbers, 1-based in
//! every file and 0-based in memory.

use std::fmt::Write as _;

use crate::conditions::PointSetPair;
use crate::empty::{IndexTriangle, TriangleSet};
use crate::error::{Error, Result};
use crate::geom::{LabeledSet, Point};
use crate::polygon::{PolygonPair, SimplePolygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Points,
    Polygon,
}

#[derive(Debug)]
pub enum Instance {
    Points(PointSetPair),
    Polygon(PolygonPair),
}

impl Instance {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::Points(_) => InstanceKind::Points,
            Instance::Polygon(_) => InstanceKind::Polygon,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Instance::Points(p) => p.len(),
            Instance::Polygon(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sides(&self) -> [&[Point]; 2] {
        match self {
            Instance::Points(p) => [p.a().points(), p.b().points()],
            Instance::Polygon(p) => [p.a().vertices(), p.b().vertices()],
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_int<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("expected an integer, found `{tok}`")))
}

/// Raw rows of an instance file, before geometric validation.
pub fn parse_rows(text: &str) -> Result<(InstanceKind, Vec<(Point, Point)>)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let mut head = header.split_whitespace();
    let kind = match head.next() {
        Some("POINTS") => InstanceKind::Points,
        Some("POLYGON") => InstanceKind::Polygon,
        Some(other) => return Err(parse_err(hline, format!("unknown instance kind `{other}`"))),
        None => return Err(parse_err(hline, "missing header")),
    };
    let n: usize = match head.next() {
        Some(tok) => parse_int(tok, hline)?,
        None => return Err(parse_err(hline, "header lacks the point count")),
    };
    if head.next().is_some() {
        return Err(parse_err(hline, "trailing tokens after header"));
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = hline;
    for (line, row) in lines {
        last = line;
        if rows.len() == n {
            return Err(parse_err(line, format!("more than {n} data rows")));
        }
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(parse_err(line, format!("expected 4 integers, found {} tokens", toks.len())));
        }
        let v: Vec<i64> = toks.iter().map(|t| parse_int(t, line)).collect::<Result<_>>()?;
        let (a, b) = (Point::new(v[0], v[1]), Point::new(v[2], v[3]));
        if !a.in_bounds() || !b.in_bounds() {
            return Err(parse_err(line, "coordinate outside the exact-arithmetic range"));
        }
        rows.push((a, b));
    }
    if rows.len() < n {
        return Err(parse_err(last, format!("expected {n} data rows, found {}", rows.len())));
    }
    Ok((kind, rows))
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let (kind, rows) = parse_rows(text)?;
    let (a, b): (Vec<Point>, Vec<Point>) = rows.into_iter().unzip();
    Ok(match kind {
        InstanceKind::Points => Instance::Points(PointSetPair::new(LabeledSet::new(a)?, LabeledSet::new(b)?)?),
        InstanceKind::Polygon => Instance::Polygon(PolygonPair::new(SimplePolygon::new(a)?, SimplePolygon::new(b)?)?),
    })
}

fn write_rows(kind: &str, a: &[Point], b: &[Point]) -> String {
    let mut s = format!("{kind} {}\n", a.len());
    for (p, q) in a.iter().zip(b) {
        let _ = writeln!(s, "{} {} {} {}", p.x, p.y, q.x, q.y);
    }
    s
}

pub fn write_points(pair: &PointSetPair) -> String {
    write_rows("POINTS", pair.a().points(), pair.b().points())
}

pub fn write_polygon(pair: &PolygonPair) -> String {
    write_rows("POLYGON", pair.a().vertices(), pair.b().vertices())
}

pub fn write_instance(inst: &Instance) -> String {
    match inst {
        Instance::Points(p) => write_points(p),
        Instance::Polygon(p) => write_polygon(p),
    }
}

/// One `i j k` line per triangle, in canonical sorted order.
pub fn write_triangles<'a>(tris: impl IntoIterator<Item = &'a IndexTriangle>) -> String {
    let mut v: Vec<IndexTriangle> = tris.into_iter().copied().collect();
    v.sort();
    let mut s = String::new();
    for t in v {
        let _ = writeln!(s, "{t}");
    }
    s
}

/// Reads a triangle list against an instance of `n` points. Keeps the file
/// order and any duplicates, so a verifier can see them.
pub fn parse_triangles(text: &str, n: usize) -> Result<Vec<IndexTriangle>> {
    let mut out = Vec::new();
    for (line, row) in content_lines(text) {
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(line, format!("expected 3 labels, found {} tokens", toks.len())));
        }
        let mut l = [0u32; 3];
        for (slot, tok) in l.iter_mut().zip(&toks) {
            let v: usize = parse_int(tok, line)?;
            if v == 0 || v > n {
                return Err(parse_err(line, format!("label {v} outside 1..={n}")));
            }
            *slot = (v - 1) as u32;
        }
        let t = IndexTriangle::try_new(l[0], l[1], l[2])
            .ok_or_else(|| parse_err(line, "triangle repeats a label"))?;
        out.push(t);
    }
    Ok(out)
}

pub fn triangle_set(list: &[IndexTriangle]) -> TriangleSet {
    list.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "# unit square\nPOINTS 4\n0 0 0 0\n2 0 2 0\n\n2 2 2 2\n0 2 0 2\n";

    #[test]
    fn parses_comments_and_blank_lines() {
        let inst = parse_instance(SQUARE).unwrap();
        assert_eq!(inst.kind(), InstanceKind::Points);
        assert_eq!(inst.len(), 4);
        assert_eq!(write_instance(&inst), "POINTS 4\n0 0 0 0\n2 0 2 0\n2 2 2 2\n0 2 0 2\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "POINTS 2\n0 0 0 0\n1 x 1 1\n";
        match parse_rows(bad) {
            Err(Error::Parse { line: 3, msg }) => assert!(msg.contains("`x`")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_rows("POINTS 3\n0 0 0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_rows("TRIANGLES 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_rows("POINTS 1\n0 0 0 0\n1 1 1 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_rows("POINTS 1\n0 0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_rows(""), Err(Error::Parse { line: 1, .. })));
        let huge = format!("POINTS 1\n{} 0 0 0\n", 1i64 << 40);
        assert!(matches!(parse_rows(&huge), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn geometric_errors_pass_through() {
        let dup = "POINTS 3\n0 0 0 0\n0 0 1 0\n0 1 0 1\n";
        assert!(matches!(parse_instance(dup), Err(Error::DuplicatePoint { .. })));
        let bowtie = "POLYGON 4\n0 0 0 0\n2 2 2 0\n2 0 2 2\n0 2 0 2\n";
        assert!(matches!(parse_instance(bowtie), Err(Error::NotSimple(_))));
    }

    #[test]
    fn triangle_lists() {
        let list = parse_triangles("# tris\n3 1 4\n1 2 3\n", 4).unwrap();
        assert_eq!(list, vec![IndexTriangle::new(0, 2, 3), IndexTriangle::new(0, 1, 2)]);
        assert_eq!(write_triangles(&list), "1 2 3\n1 3 4\n");
        assert!(matches!(parse_triangles("1 2 5\n", 4), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_triangles("1 2 2\n", 4), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_triangles("\n1 2\n", 4), Err(Error::Parse { line: 2, .. })));
    }
}
