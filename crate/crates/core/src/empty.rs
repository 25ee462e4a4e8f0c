//! Label triples, their edge-indexed sets, and empty-triangle enumeration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::conditions::PointSetPair;
use crate::geom::{orient, LabeledSet, Orientation};

/// Unordered label pair, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(u32, u32);

impl Edge {
    pub fn new(a: u32, b: u32) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn labels(self) -> (u32, u32) {
        (self.0, self.1)
    }

    pub fn contains(self, label: u32) -> bool {
        self.0 == label || self.1 == label
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.0 + 1, self.1 + 1)
    }
}

/// Unordered label triple, stored sorted. The same triple names a triangle
/// of either realization of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTriangle([u32; 3]);

impl IndexTriangle {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        debug_assert!(v[0] != v[1] && v[1] != v[2], "repeated label in {v:?}");
        IndexTriangle(v)
    }

    /// Returns `None` when two labels coincide.
    pub fn try_new(a: u32, b: u32, c: u32) -> Option<Self> {
        (a != b && b != c && a != c).then(|| Self::new(a, b, c))
    }

    pub fn labels(self) -> [u32; 3] {
        self.0
    }

    pub fn edges(self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge(a, b), Edge(b, c), Edge(a, c)]
    }

    pub fn contains(self, label: u32) -> bool {
        self.0.contains(&label)
    }

    /// The vertex not on `edge`. `edge` must be an edge of the triangle.
    pub fn apex(self, edge: Edge) -> u32 {
        let (i, j) = edge.labels();
        debug_assert!(self.contains(i) && self.contains(j));
        self.0.into_iter().find(|&v| v != i && v != j).expect("edge of triangle")
    }
}

impl fmt::Display for IndexTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }
}

/// A set of triangles with an inverted edge index kept in sync.
#[derive(Debug, Clone, Default)]
pub struct TriangleSet {
    triangles: BTreeSet<IndexTriangle>,
    edge_index: HashMap<Edge, Vec<IndexTriangle>>,
}

impl PartialEq for TriangleSet {
    fn eq(&self, other: &Self) -> bool {
        self.triangles == other.triangles
    }
}

impl Eq for TriangleSet {}

impl TriangleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, t: IndexTriangle) -> bool {
        if !self.triangles.insert(t) {
            return false;
        }
        for e in t.edges() {
            self.edge_index.entry(e).or_default().push(t);
        }
        true
    }

    pub fn remove(&mut self, t: IndexTriangle) -> bool {
        if !self.triangles.remove(&t) {
            return false;
        }
        for e in t.edges() {
            if let Some(list) = self.edge_index.get_mut(&e) {
                list.retain(|&u| u != t);
                if list.is_empty() {
                    self.edge_index.remove(&e);
                }
            }
        }
        true
    }

    pub fn contains(&self, t: IndexTriangle) -> bool {
        self.triangles.contains(&t)
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Triangles in canonical (sorted) order.
    pub fn iter(&self) -> impl Iterator<Item = IndexTriangle> + '_ {
        self.triangles.iter().copied()
    }

    /// Triangles having `edge` as a side, in insertion order.
    pub fn on_edge(&self, edge: Edge) -> &[IndexTriangle] {
        self.edge_index.get(&edge).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All edges used by some triangle, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut v: Vec<Edge> = self.edge_index.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn intersection(&self, other: &TriangleSet) -> TriangleSet {
        self.iter().filter(|&t| other.contains(t)).collect()
    }

    /// Checks that the edge index is exactly the inverse of the triangle set.
    pub fn index_is_consistent(&self) -> bool {
        let mut expected: HashMap<Edge, BTreeSet<IndexTriangle>> = HashMap::new();
        for t in self.iter() {
            for e in t.edges() {
                expected.entry(e).or_default().insert(t);
            }
        }
        expected.len() == self.edge_index.len()
            && expected.iter().all(|(e, ts)| {
                self.edge_index
                    .get(e)
                    .is_some_and(|v| v.len() == ts.len() && v.iter().all(|t| ts.contains(t)))
            })
    }
}

impl FromIterator<IndexTriangle> for TriangleSet {
    fn from_iter<I: IntoIterator<Item = IndexTriangle>>(iter: I) -> Self {
        let mut s = TriangleSet::new();
        for t in iter {
            s.insert(t);
        }
        s
    }
}

impl Extend<IndexTriangle> for TriangleSet {
    fn extend<I: IntoIterator<Item = IndexTriangle>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

/// All nondegenerate triples whose closed triangle holds no other point of
/// `s` (a point on an edge disqualifies the triple).
///
/// Cubic time. Points are ranked lexicographically, which behaves like an
/// x-order after an infinitesimal rotation. For each ranked pair `a < b` we
/// count the points ranked strictly between them that lie below the line
/// `ab` or on the segment; any triangle's interior count then follows from
/// the three counts of its sides.
pub fn enumerate_empty(s: &LabeledSet) -> TriangleSet {
    let pts = s.points();
    let n = pts.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| pts[i]);
    let p: Vec<_> = order.iter().map(|&i| pts[i]).collect();

    let mut below = vec![0u32; n * n];
    let mut on = vec![0u32; n * n];
    for a in 0..n {
        for c in a + 1..n {
            let (mut lo, mut mid) = (0, 0);
            for r in a + 1..c {
                match orient(p[a], p[c], p[r]) {
                    Orientation::Cw => lo += 1,
                    Orientation::Collinear => mid += 1,
                    Orientation::Ccw => {}
                }
            }
            below[a * n + c] = lo;
            on[a * n + c] = mid;
        }
    }

    let mut out = TriangleSet::new();
    for a in 0..n {
        for b in a + 1..n {
            if on[a * n + b] > 0 {
                continue;
            }
            for c in b + 1..n {
                if on[b * n + c] > 0 || on[a * n + c] > 0 {
                    continue;
                }
                let (ab, bc, ac) = (below[a * n + b], below[b * n + c], below[a * n + c]);
                let inside = match orient(p[a], p[c], p[b]) {
                    Orientation::Collinear => continue,
                    Orientation::Ccw => ab + bc - ac,
                    Orientation::Cw => ac - 1 - ab - bc,
                };
                if inside == 0 {
                    out.insert(IndexTriangle::new(order[a] as u32, order[b] as u32, order[c] as u32));
                }
            }
        }
    }
    out
}

/// Triples empty in both realizations.
pub fn paired_empty(pair: &PointSetPair) -> TriangleSet {
    enumerate_empty(pair.a()).intersection(&enumerate_empty(pair.b()))
}
