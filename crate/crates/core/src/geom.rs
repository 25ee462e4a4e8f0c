//! Exact integer predicates and the small amount of planar geometry the
//! rest of the crate is built on.
//!
//! Coordinates are `i64` restricted to `[-COORD_LIMIT, COORD_LIMIT]`.
//! Differences then fit in 32 bits and every determinant is evaluated in
//! `i128`, so no predicate can overflow or round.

use std::fmt;

use crate::error::Error;

/// Largest admissible absolute coordinate value (2^30).
pub const COORD_LIMIT: i64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_bounds(&self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Twice the signed area of `pqr`; positive when counterclockwise.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (ux, uy) = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let (vx, vy) = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    ux * vy - uy * vx
}

#[inline]
pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r) {
        d if d > 0 => Orientation::Ccw,
        d if d < 0 => Orientation::Cw,
        _ => Orientation::Collinear,
    }
}

/// Twice the unsigned area of a triangle.
pub fn doubled_area(t: [Point; 3]) -> i128 {
    cross(t[0], t[1], t[2]).abs()
}

/// Twice the signed area of a closed polygon given in boundary order.
pub fn doubled_signed_area(poly: &[Point]) -> i128 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128
        })
        .sum()
}

/// `r` lies on the closed segment `pq` (assumes nothing about collinearity).
pub fn on_segment(p: Point, q: Point, r: Point) -> bool {
    orient(p, q, r) == Orientation::Collinear
        && r.x >= p.x.min(q.x)
        && r.x <= p.x.max(q.x)
        && r.y >= p.y.min(q.y)
        && r.y <= p.y.max(q.y)
}

/// `r` lies on the open segment `pq`.
pub fn strictly_between(p: Point, q: Point, r: Point) -> bool {
    r != p && r != q && on_segment(p, q, r)
}

/// The open segments `pq` and `rs` cross at a single point interior to both.
pub fn segments_cross_properly(p: Point, q: Point, r: Point, s: Point) -> bool {
    let o1 = orient(p, q, r);
    let o2 = orient(p, q, s);
    let o3 = orient(r, s, p);
    let o4 = orient(r, s, q);
    o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
        && o1 != o2
        && o3 != o4
}

/// The closed segments `pq` and `rs` share at least one point.
pub fn segments_intersect(p: Point, q: Point, r: Point, s: Point) -> bool {
    segments_cross_properly(p, q, r, s)
        || on_segment(p, q, r)
        || on_segment(p, q, s)
        || on_segment(r, s, p)
        || on_segment(r, s, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainMode {
    /// Strictly inside a nondegenerate triangle.
    StrictInterior,
    /// Anywhere in the closed triangle except its three corners. For a
    /// collinear triple this is the spanned segment.
    ClosedMinusVertices,
}

/// Point-in-triangle test. `p` is expected not to be a corner of `t`; if it
/// is, the answer is `false` in both modes.
pub fn triangle_contains(t: [Point; 3], p: Point, mode: ContainMode) -> bool {
    if t.contains(&p) {
        return false;
    }
    let o = [orient(t[0], t[1], p), orient(t[1], t[2], p), orient(t[2], t[0], p)];
    let area = cross(t[0], t[1], t[2]);
    if area == 0 {
        return match mode {
            ContainMode::StrictInterior => false,
            ContainMode::ClosedMinusVertices => {
                on_segment(t[0], t[1], p) || on_segment(t[1], t[2], p) || on_segment(t[2], t[0], p)
            }
        };
    }
    let inside = if area > 0 { Orientation::Ccw } else { Orientation::Cw };
    match mode {
        ContainMode::StrictInterior => o.iter().all(|&s| s == inside),
        ContainMode::ClosedMinusVertices => o.iter().all(|&s| s != inside.reversed()),
    }
}

/// Whether the open interiors of two nondegenerate triangles meet.
///
/// Two convex polygons have disjoint interiors exactly when some edge line of
/// one of them leaves the other entirely in its closed outer half-plane.
pub fn interiors_overlap(t1: [Point; 3], t2: [Point; 3]) -> bool {
    !separated_by_edge(t1, t2) && !separated_by_edge(t2, t1)
}

fn separated_by_edge(t: [Point; 3], other: [Point; 3]) -> bool {
    let t = ccw_order(t);
    (0..3).any(|i| {
        let (p, q) = (t[i], t[(i + 1) % 3]);
        other.iter().all(|&v| cross(p, q, v) <= 0)
    })
}

fn ccw_order(t: [Point; 3]) -> [Point; 3] {
    if cross(t[0], t[1], t[2]) < 0 {
        [t[0], t[2], t[1]]
    } else {
        t
    }
}

/// A labeled planar point set. Position in `points` is the label (0-based
/// internally, shown 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSet {
    points: Vec<Point>,
}

impl LabeledSet {
    pub fn new(points: Vec<Point>) -> Result<Self, Error> {
        if points.len() < 3 {
            return Err(Error::TooFewPoints(points.len()));
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| !p.in_bounds()) {
            return Err(Error::CoordinateOutOfRange { label: i + 1, point: *p });
        }
        let mut sorted: Vec<(Point, usize)> = points.iter().copied().zip(0..).collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicatePoint { first: w[0].1 + 1, second: w[1].1 + 1 });
        }
        Ok(LabeledSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn point(&self, label: u32) -> Point {
        self.points[label as usize]
    }

    pub fn triangle(&self, labels: [u32; 3]) -> [Point; 3] {
        labels.map(|l| self.point(l))
    }
}

/// Counterclockwise hull boundary as labels, starting from the
/// lexicographically smallest point. Points lying on a hull edge are kept
/// as boundary vertices, so consecutive labels are always an empty segment.
pub fn convex_hull(points: &[Point]) -> Result<Vec<u32>, Error> {
    let n = points.len();
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&i| points[i as usize]);

    let p = |i: u32| points[i as usize];
    if (2..n).all(|k| orient(p(order[0]), p(order[1]), p(order[k])) == Orientation::Collinear)
    {
        return Err(Error::DegeneratePointSet);
    }

    let chain = |iter: &mut dyn Iterator<Item = u32>| {
        let mut h: Vec<u32> = Vec::new();
        for i in iter {
            while h.len() >= 2 && orient(p(h[h.len() - 2]), p(h[h.len() - 1]), p(i)) == Orientation::Cw {
                h.pop();
            }
            h.push(i);
        }
        h.pop();
        h
    };
    let mut lower = chain(&mut order.iter().copied());
    let upper = chain(&mut order.iter().rev().copied());
    lower.extend(upper);
    Ok(lower)
}
