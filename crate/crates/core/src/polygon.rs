//! Joint triangulation of two simple polygons with corresponding vertices.
//!
//! Sub-polygons cut off by one diagonal are identified with index intervals
//! `(i, q)`, `i < q`: the chain `i, i+1, ..., q` closed by the chord `iq`.
//! A cell is solvable when the chord is a shared visibility edge and some
//! apex `k` strictly inside the interval splits it into two solvable cells.

use std::collections::BTreeSet;

use crate::conditions::Side;
use crate::empty::{Edge, IndexTriangle, TriangleSet};
use crate::error::{Error, Result};
use crate::geom::{
    cross, doubled_area, doubled_signed_area, on_segment, orient, segments_cross_properly, segments_intersect,
    strictly_between, Orientation, Point,
};
use crate::greedy::{check_disjoint, check_edge_uses, JointTriangulation, Violation};
use crate::geom::LabeledSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    ccw: bool,
}

impl SimplePolygon {
    /// Validates simplicity. Orientation is recorded, not changed, so that
    /// labels keep pointing at the same vertices.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        // reuses the range and distinctness checks
        LabeledSet::new(vertices.clone())?;
        let area = doubled_signed_area(&vertices);
        if area == 0 {
            return Err(Error::NotSimple("zero area".into()));
        }
        check_simple(&vertices)?;
        Ok(SimplePolygon { vertices, ccw: area > 0 })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: u32) -> Point {
        self.vertices[i as usize]
    }

    pub fn is_ccw(&self) -> bool {
        self.ccw
    }

    pub fn doubled_area(&self) -> i128 {
        doubled_signed_area(&self.vertices).abs()
    }

    pub fn triangle(&self, labels: [u32; 3]) -> [Point; 3] {
        labels.map(|l| self.vertex(l))
    }

    /// `true` when `i, k, q` wind the same way as the boundary.
    pub fn winds_with_boundary(&self, i: u32, k: u32, q: u32) -> bool {
        let o = orient(self.vertex(i), self.vertex(k), self.vertex(q));
        o == if self.ccw { Orientation::Ccw } else { Orientation::Cw }
    }
}

fn check_simple(v: &[Point]) -> Result<()> {
    let n = v.len();
    let edge = |i: usize| (v[i], v[(i + 1) % n]);
    for i in 0..n {
        let (p, q) = edge(i);
        let (_, r) = edge((i + 1) % n);
        // consecutive edges may only share their common endpoint
        if n > 3 && (on_segment(p, q, r) || on_segment(q, r, p)) {
            return Err(Error::NotSimple(format!("edges at vertex {} fold back", (i + 1) % n + 1)));
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (r, s) = edge(j);
            if segments_intersect(p, q, r, s) {
                return Err(Error::NotSimple(format!(
                    "edges {}-{} and {}-{} intersect",
                    i + 1,
                    (i + 1) % n + 1,
                    j + 1,
                    (j + 1) % n + 1
                )));
            }
        }
    }
    Ok(())
}

/// Boundary edges plus diagonals. Stored both as a sorted set and as a
/// dense adjacency matrix for the DP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityGraph {
    n: usize,
    adj: Vec<bool>,
}

impl VisibilityGraph {
    fn empty(n: usize) -> Self {
        VisibilityGraph { n, adj: vec![false; n * n] }
    }

    fn add(&mut self, i: u32, j: u32) {
        let (i, j) = (i as usize, j as usize);
        self.adj[i * self.n + j] = true;
        self.adj[j * self.n + i] = true;
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = Self::empty(n);
        for e in edges {
            let (i, j) = e.labels();
            g.add(i, j);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: u32, j: u32) -> bool {
        self.adj[i as usize * self.n + j as usize]
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        let n = self.n as u32;
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.contains(i, j)).map(|(i, j)| Edge::new(i, j)).collect()
    }

    pub fn diagonals(&self) -> Vec<Edge> {
        self.edges().into_iter().filter(|&e| !is_boundary(self.n, e)).collect()
    }

    pub fn len(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn intersection(&self, other: &VisibilityGraph) -> VisibilityGraph {
        assert_eq!(self.n, other.n);
        VisibilityGraph { n: self.n, adj: self.adj.iter().zip(&other.adj).map(|(a, b)| *a && *b).collect() }
    }

    pub fn without(&self, e: Edge) -> VisibilityGraph {
        let mut g = self.clone();
        let (i, j) = e.labels();
        g.adj[i as usize * g.n + j as usize] = false;
        g.adj[j as usize * g.n + i as usize] = false;
        g
    }
}

pub fn is_boundary(n: usize, e: Edge) -> bool {
    let (i, j) = e.labels();
    j == i + 1 || (i == 0 && j as usize == n - 1)
}

/// The direction from vertex `i` towards `j` starts into the polygon's
/// interior (strictly inside the interior angle at `i`).
fn in_cone(p: &SimplePolygon, i: usize, j: usize) -> bool {
    let n = p.len();
    let v = p.vertices();
    let (mut prev, mut next) = (v[(i + n - 1) % n], v[(i + 1) % n]);
    if !p.ccw {
        std::mem::swap(&mut prev, &mut next);
    }
    let (a, b) = (v[i], v[j]);
    let left = |p: Point, q: Point, r: Point| cross(p, q, r) > 0;
    let left_on = |p: Point, q: Point, r: Point| cross(p, q, r) >= 0;
    if left_on(a, next, prev) {
        left(a, b, prev) && left(b, a, next)
    } else {
        !(left_on(a, b, next) && left_on(b, a, prev))
    }
}

pub fn visibility_graph(p: &SimplePolygon) -> Result<VisibilityGraph> {
    let n = p.len();
    let v = p.vertices();
    let mut g = VisibilityGraph::empty(n);
    for i in 0..n {
        g.add(i as u32, ((i + 1) % n) as u32);
    }
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = (v[i], v[j]);
            let crosses = (0..n).any(|e| segments_cross_properly(a, b, v[e], v[(e + 1) % n]));
            let opens_inside = in_cone(p, i, j) && in_cone(p, j, i);
            if let Some(k) = (0..n).find(|&k| k != i && k != j && strictly_between(a, b, v[k])) {
                if opens_inside && !crosses {
                    return Err(Error::GrazingDiagonal { i: i + 1, j: j + 1, k: k + 1 });
                }
                continue;
            }
            if opens_inside && !crosses {
                g.add(i as u32, j as u32);
            }
        }
    }
    Ok(g)
}

/// Two simple polygons with vertex `i` of `a` corresponding to vertex `i`
/// of `b`, together with their visibility graphs and the shared one.
#[derive(Debug, Clone)]
pub struct PolygonPair {
    a: SimplePolygon,
    b: SimplePolygon,
    vg_a: VisibilityGraph,
    vg_b: VisibilityGraph,
    ivg: VisibilityGraph,
}

impl PolygonPair {
    pub fn new(a: SimplePolygon, b: SimplePolygon) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::SizeMismatch { a: a.len(), b: b.len() });
        }
        let vg_a = visibility_graph(&a)?;
        let vg_b = visibility_graph(&b)?;
        let ivg = vg_a.intersection(&vg_b);
        Ok(PolygonPair { a, b, vg_a, vg_b, ivg })
    }

    pub fn a(&self) -> &SimplePolygon {
        &self.a
    }

    pub fn b(&self) -> &SimplePolygon {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn vg_a(&self) -> &VisibilityGraph {
        &self.vg_a
    }

    pub fn vg_b(&self) -> &VisibilityGraph {
        &self.vg_b
    }

    pub fn ivg(&self) -> &VisibilityGraph {
        &self.ivg
    }

    pub fn sides(&self) -> [(Side, &SimplePolygon); 2] {
        [(Side::A, &self.a), (Side::B, &self.b)]
    }
}

/// Label-pair intersection of the two visibility graphs.
pub fn ivg(pair: &PolygonPair) -> &VisibilityGraph {
    pair.ivg()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitRule {
    /// Shared-visibility chords and solvable halves only.
    Verbatim,
    /// Additionally require the apex triangle to wind with both boundaries.
    Guarded,
}

/// Solvability per interval and the apex recorded for backtracking.
#[derive(Debug, Clone)]
pub struct DpTable {
    n: usize,
    m: Vec<bool>,
    choice: Vec<Option<u32>>,
}

impl DpTable {
    #[inline]
    pub fn m(&self, i: u32, q: u32) -> bool {
        self.m[i as usize * self.n + q as usize]
    }

    pub fn choice(&self, i: u32, q: u32) -> Option<u32> {
        self.choice[i as usize * self.n + q as usize]
    }

    pub fn whole(&self) -> bool {
        self.m(0, self.n as u32 - 1)
    }

    /// Triangles of the recorded solution, or `None` when the whole polygon
    /// is unsolvable.
    pub fn backtrack(&self) -> Option<TriangleSet> {
        if !self.whole() {
            return None;
        }
        let mut out = TriangleSet::new();
        let mut stack = vec![(0u32, self.n as u32 - 1)];
        while let Some((i, q)) = stack.pop() {
            if q - i < 2 {
                continue;
            }
            let k = self.choice(i, q).expect("solvable cell has a split");
            out.insert(IndexTriangle::new(i, k, q));
            stack.push((i, k));
            stack.push((k, q));
        }
        Some(out)
    }
}

fn chord_ok(pair: &PolygonPair, graph: &VisibilityGraph, i: u32, q: u32) -> bool {
    (i == 0 && q as usize == pair.len() - 1) || graph.contains(i, q)
}

fn apex_ok(pair: &PolygonPair, graph: &VisibilityGraph, rule: SplitRule, i: u32, k: u32, q: u32) -> bool {
    graph.contains(i, k)
        && graph.contains(k, q)
        && (rule == SplitRule::Verbatim
            || (pair.a.winds_with_boundary(i, k, q) && pair.b.winds_with_boundary(i, k, q)))
}

/// Fills the table over intervals of increasing length using `graph` as the
/// admissible edge set (normally the shared visibility graph).
pub fn fill_dp(pair: &PolygonPair, graph: &VisibilityGraph, rule: SplitRule) -> DpTable {
    let n = pair.len();
    let mut t = DpTable { n, m: vec![false; n * n], choice: vec![None; n * n] };
    for i in 0..n - 1 {
        t.m[i * n + i + 1] = true;
    }
    for size in 2..n {
        for i in 0..n - size {
            let q = i + size;
            if !chord_ok(pair, graph, i as u32, q as u32) {
                continue;
            }
            for k in i + 1..q {
                if t.m[i * n + k] && t.m[k * n + q] && apex_ok(pair, graph, rule, i as u32, k as u32, q as u32) {
                    t.m[i * n + q] = true;
                    t.choice[i * n + q] = Some(k as u32);
                    break;
                }
            }
        }
    }
    t
}

/// Number of joint triangulations, saturating at `u128::MAX`.
pub fn count_joint_polygon(pair: &PolygonPair) -> u128 {
    let n = pair.len();
    let g = pair.ivg();
    let mut c = vec![0u128; n * n];
    for i in 0..n - 1 {
        c[i * n + i + 1] = 1;
    }
    for size in 2..n {
        for i in 0..n - size {
            let q = i + size;
            if !chord_ok(pair, g, i as u32, q as u32) {
                continue;
            }
            let mut total = 0u128;
            for k in i + 1..q {
                if apex_ok(pair, g, SplitRule::Guarded, i as u32, k as u32, q as u32) {
                    total = total.saturating_add(c[i * n + k].saturating_mul(c[k * n + q]));
                }
            }
            c[i * n + q] = total;
        }
    }
    c[n - 1]
}

/// Solves with the guarded rule and verifies the backtracked triangles.
/// `None` when no joint triangulation exists.
pub fn dp_joint_polygon(pair: &PolygonPair) -> Option<JointTriangulation> {
    let table = fill_dp(pair, pair.ivg(), SplitRule::Guarded);
    let triangles = table.backtrack()?;
    let check = verify_polygon_joint(pair, &triangles);
    let trace = triangles.iter().collect();
    Some(JointTriangulation::from_checked(triangles, check, trace))
}

pub fn verify_polygon_joint(pair: &PolygonPair, t: &TriangleSet) -> std::result::Result<(), Violation> {
    let n = pair.len();
    if t.len() != n - 2 {
        return Err(Violation::WrongCount { expected: n - 2, found: t.len() });
    }
    if let Some(bad) = t.iter().find(|tri| tri.labels()[2] as usize >= n) {
        return Err(Violation::LabelOutOfRange { triangle: bad });
    }
    for e in t.edges() {
        let (i, j) = e.labels();
        if !pair.ivg().contains(i, j) {
            return Err(Violation::NotInVisibilityGraph { edge: e });
        }
    }
    let boundary: BTreeSet<Edge> = (0..n as u32).map(|i| Edge::new(i, (i + 1) % n as u32)).collect();
    for (side, poly) in pair.sides() {
        let as_set = LabeledSet::new(poly.vertices().to_vec()).map_err(|e| Violation::Other(e.to_string()))?;
        if let Some(tri) = t.iter().find(|tri| doubled_area(poly.triangle(tri.labels())) == 0) {
            return Err(Violation::Degenerate { side, triangle: tri });
        }
        check_disjoint(side, &as_set, t)?;
        let covered: i128 = t.iter().map(|tri| doubled_area(poly.triangle(tri.labels()))).sum();
        if covered != poly.doubled_area() {
            return Err(Violation::AreaMismatch { side, covered, hull: poly.doubled_area() });
        }
        check_edge_uses(side, t, &boundary)?;
    }
    Ok(())
}
