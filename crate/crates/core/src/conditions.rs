//! Hull correspondence and the legal-triangle fixpoint.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::empty::{Edge, IndexTriangle, TriangleSet};
use crate::error::{Error, Result};
use crate::geom::{convex_hull, orient, LabeledSet, Orientation};

/// Two labeled sets of equal size; label `i` of `a` corresponds to label
/// `i` of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSetPair {
    a: LabeledSet,
    b: LabeledSet,
}

impl PointSetPair {
    pub fn new(a: LabeledSet, b: LabeledSet) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::SizeMismatch { a: a.len(), b: b.len() });
        }
        Ok(PointSetPair { a, b })
    }

    pub fn a(&self) -> &LabeledSet {
        &self.a
    }

    pub fn b(&self) -> &LabeledSet {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn sides(&self) -> [(Side, &LabeledSet); 2] {
        [(Side::A, &self.a), (Side::B, &self.b)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Hull boundary of a labeled set as unordered label pairs.
pub fn hull_edges(s: &LabeledSet) -> Result<BTreeSet<Edge>> {
    let h = convex_hull(s.points())?;
    Ok((0..h.len()).map(|i| Edge::new(h[i], h[(i + 1) % h.len()])).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition1 {
    Pass { hull_edges: BTreeSet<Edge> },
    /// `witness` is a hull edge of exactly one side.
    Fail { witness: Edge },
}

impl Condition1 {
    pub fn passed(&self) -> bool {
        matches!(self, Condition1::Pass { .. })
    }
}

pub fn check_condition1(pair: &PointSetPair) -> Result<Condition1> {
    let ha = hull_edges(pair.a())?;
    let hb = hull_edges(pair.b())?;
    match ha.symmetric_difference(&hb).next() {
        Some(&witness) => Ok(Condition1::Fail { witness }),
        None => Ok(Condition1::Pass { hull_edges: ha }),
    }
}

/// Which side of `edge` the apex of `t` falls on, in each realization.
/// `None` if the apex is collinear with the edge in either set.
fn apex_sides(pair: &PointSetPair, t: IndexTriangle, edge: Edge) -> Option<(bool, bool)> {
    let (i, j) = edge.labels();
    let k = t.apex(edge);
    let side = |s: &LabeledSet| match orient(s.point(i), s.point(j), s.point(k)) {
        Orientation::Ccw => Some(true),
        Orientation::Cw => Some(false),
        Orientation::Collinear => None,
    };
    Some((side(pair.a())?, side(pair.b())?))
}

/// Triangles of `candidates` across `edge` from `t` in both realizations,
/// in canonical order.
pub fn successors(
    candidates: &TriangleSet,
    pair: &PointSetPair,
    t: IndexTriangle,
    edge: Edge,
) -> Vec<IndexTriangle> {
    let Some((sa, sb)) = apex_sides(pair, t, edge) else {
        return Vec::new();
    };
    let mut out: Vec<IndexTriangle> = candidates
        .on_edge(edge)
        .iter()
        .copied()
        .filter(|&u| u != t && apex_sides(pair, u, edge) == Some((!sa, !sb)))
        .collect();
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Removal {
    pub triangle: IndexTriangle,
    /// Non-hull edge on which the triangle had no successor when removed.
    pub witness: Edge,
}

#[derive(Debug, Clone)]
pub struct LegalSetResult {
    pub legal: TriangleSet,
    pub removed: Vec<Removal>,
    pub hull_edges: BTreeSet<Edge>,
}

impl LegalSetResult {
    /// One line per deletion: `triangle / witness edge`, 1-based.
    pub fn explain(&self) -> String {
        self.removed
            .iter()
            .map(|r| format!("removed {} witness {}\n", r.triangle, r.witness))
            .collect()
    }
}

/// Greatest subset of `paired` in which every triangle has a successor on
/// each of its non-hull edges. Worklist seeded with every non-hull edge in
/// canonical order.
pub fn legal_set(pair: &PointSetPair, paired: &TriangleSet, hull_edges: &BTreeSet<Edge>) -> LegalSetResult {
    legal_set_ordered(pair, paired, hull_edges, None)
}

/// As [`legal_set`], with the initial worklist and every later batch of
/// pushed edges shuffled by `seed`. The result must not depend on it.
pub fn legal_set_shuffled(
    pair: &PointSetPair,
    paired: &TriangleSet,
    hull_edges: &BTreeSet<Edge>,
    seed: u64,
) -> LegalSetResult {
    legal_set_ordered(pair, paired, hull_edges, Some(seed))
}

fn legal_set_ordered(
    pair: &PointSetPair,
    paired: &TriangleSet,
    hull_edges: &BTreeSet<Edge>,
    seed: Option<u64>,
) -> LegalSetResult {
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut alive = paired.clone();
    let mut removed = Vec::new();

    let mut initial: Vec<Edge> = alive.edges().into_iter().filter(|e| !hull_edges.contains(e)).collect();
    if let Some(rng) = rng.as_mut() {
        initial.shuffle(rng);
    }
    let mut queued: HashSet<Edge> = initial.iter().copied().collect();
    let mut queue: VecDeque<Edge> = initial.into();

    while let Some(edge) = queue.pop_front() {
        queued.remove(&edge);
        if alive.is_empty() {
            break;
        }
        // Apex side classes on this edge: (side in A, side in B). A triangle
        // is supported iff the opposite class is populated. Removing an
        // unsupported class never unsupports another one on the same edge.
        let mut present = [false; 4];
        let class = |s: (bool, bool)| (s.0 as usize) << 1 | s.1 as usize;
        let on_edge: Vec<(IndexTriangle, Option<(bool, bool)>)> =
            alive.on_edge(edge).iter().map(|&t| (t, apex_sides(pair, t, edge))).collect();
        for (_, s) in &on_edge {
            if let Some(s) = s {
                present[class(*s)] = true;
            }
        }
        let mut doomed: Vec<IndexTriangle> = on_edge
            .iter()
            .filter(|(_, s)| match s {
                Some(s) => !present[class((!s.0, !s.1))],
                None => true,
            })
            .map(|(t, _)| *t)
            .collect();
        doomed.sort_unstable();

        let mut pushed = Vec::new();
        for t in doomed {
            alive.remove(t);
            removed.push(Removal { triangle: t, witness: edge });
            for e in t.edges() {
                if e != edge && !hull_edges.contains(&e) && queued.insert(e) {
                    pushed.push(e);
                }
            }
        }
        if let Some(rng) = rng.as_mut() {
            pushed.shuffle(rng);
        }
        queue.extend(pushed);
    }

    LegalSetResult { legal: alive, removed, hull_edges: hull_edges.clone() }
}

pub fn check_condition2(result: &LegalSetResult) -> bool {
    !result.legal.is_empty()
}

/// Every triangle of `set` has a successor within `set` on each non-hull edge.
pub fn is_self_supporting(pair: &PointSetPair, set: &TriangleSet, hull_edges: &BTreeSet<Edge>) -> bool {
    set.iter().all(|t| {
        t.edges()
            .into_iter()
            .filter(|e| !hull_edges.contains(e))
            .all(|e| !successors(set, pair, t, e).is_empty())
    })
}
