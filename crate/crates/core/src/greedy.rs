//! Greedy construction of a joint triangulation from the legal set, and an
//! independent verifier for any claimed joint triangulation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::conditions::{hull_edges, PointSetPair, Side};
use crate::empty::{Edge, IndexTriangle, TriangleSet};
use crate::geom::{
    convex_hull, doubled_area, doubled_signed_area, interiors_overlap, triangle_contains, ContainMode,
    LabeledSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// Always take the canonically smallest remaining triple.
    Lex,
    /// Take triples in an order fixed by a seeded shuffle.
    SeededRandom(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LabelOutOfRange { triangle: IndexTriangle },
    Duplicate { triangle: IndexTriangle },
    Degenerate { side: Side, triangle: IndexTriangle },
    NonEmpty { side: Side, triangle: IndexTriangle, point: u32 },
    Overlap { side: Side, first: IndexTriangle, second: IndexTriangle },
    AreaMismatch { side: Side, covered: i128, hull: i128 },
    HullEdgeUse { side: Side, edge: Edge, uses: usize },
    InteriorEdgeUse { side: Side, edge: Edge, uses: usize },
    /// Polygon triangulations only.
    WrongCount { expected: usize, found: usize },
    /// Polygon triangulations only.
    NotInVisibilityGraph { edge: Edge },
    Other(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LabelOutOfRange { triangle } => write!(f, "label out of range in triangle {triangle}"),
            Violation::Duplicate { triangle } => write!(f, "triangle {triangle} listed more than once"),
            Violation::Degenerate { side, triangle } => {
                write!(f, "triangle {triangle} is degenerate in {side}")
            }
            Violation::NonEmpty { side, triangle, point } => write!(
                f,
                "corresponding triangle non-empty in {side}: {triangle} contains point {}",
                point + 1
            ),
            Violation::Overlap { side, first, second } => {
                write!(f, "interiors overlap in {side}: {first} and {second}")
            }
            Violation::AreaMismatch { side, covered, hull } => write!(
                f,
                "area mismatch in {side}: triangles cover doubled area {covered}, region has {hull}"
            ),
            Violation::HullEdgeUse { side, edge, uses } => {
                write!(f, "boundary edge {edge} used {uses} times in {side} (expected 1)")
            }
            Violation::InteriorEdgeUse { side, edge, uses } => {
                write!(f, "interior edge {edge} used {uses} times in {side} (expected 2)")
            }
            Violation::WrongCount { expected, found } => {
                write!(f, "expected {expected} triangles, found {found}")
            }
            Violation::NotInVisibilityGraph { edge } => {
                write!(f, "edge {edge} is not a shared visibility edge")
            }
            Violation::Other(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct JointTriangulation {
    pub triangles: TriangleSet,
    pub verified: bool,
    pub violation: Option<Violation>,
    /// Triangles in the order they were picked.
    pub trace: Vec<IndexTriangle>,
}

impl JointTriangulation {
    pub fn from_checked(triangles: TriangleSet, check: Result<(), Violation>, trace: Vec<IndexTriangle>) -> Self {
        JointTriangulation { triangles, verified: check.is_ok(), violation: check.err(), trace }
    }
}

/// Repeatedly keep one legal triangle and discard every remaining legal
/// triangle whose interior meets it in either realization. The result is
/// verified, never assumed.
pub fn greedy_construct(pair: &PointSetPair, legal: &TriangleSet, policy: Policy) -> JointTriangulation {
    let mut pool: Vec<IndexTriangle> = legal.iter().collect();
    if let Policy::SeededRandom(seed) = policy {
        pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let realize = |t: IndexTriangle| (pair.a().triangle(t.labels()), pair.b().triangle(t.labels()));
    let mut pool: Vec<_> = pool.into_iter().map(|t| (t, realize(t))).collect();

    let mut trace = Vec::new();
    while !pool.is_empty() {
        let (pick, (pa, pb)) = pool[0];
        trace.push(pick);
        pool.retain(|&(_, (ta, tb))| !interiors_overlap(pa, ta) && !interiors_overlap(pb, tb));
    }

    let triangles: TriangleSet = trace.iter().copied().collect();
    let check = verify_joint(pair, &triangles);
    JointTriangulation::from_checked(triangles, check, trace)
}

/// As [`verify_joint`] for a raw list, which may repeat a triple.
pub fn verify_joint_list(pair: &PointSetPair, list: &[IndexTriangle]) -> Result<(), Violation> {
    check_no_duplicates(list)?;
    verify_joint(pair, &list.iter().copied().collect())
}

pub(crate) fn check_no_duplicates(list: &[IndexTriangle]) -> Result<(), Violation> {
    let mut seen = BTreeSet::new();
    match list.iter().find(|&&t| !seen.insert(t)) {
        Some(&triangle) => Err(Violation::Duplicate { triangle }),
        None => Ok(()),
    }
}

/// Checks, in order: labels, per-side nondegeneracy and emptiness, pairwise
/// disjoint interiors, exact area against the hull, and edge multiplicities.
pub fn verify_joint(pair: &PointSetPair, t: &TriangleSet) -> Result<(), Violation> {
    let n = pair.len() as u32;
    if let Some(bad) = t.iter().find(|tri| tri.labels()[2] >= n) {
        return Err(Violation::LabelOutOfRange { triangle: bad });
    }
    for (side, s) in pair.sides() {
        for tri in t.iter() {
            check_empty(side, s, tri)?;
        }
    }
    for (side, s) in pair.sides() {
        check_disjoint(side, s, t)?;
    }
    for (side, s) in pair.sides() {
        let hull = convex_hull(s.points()).map_err(|e| Violation::Other(e.to_string()))?;
        let hull_pts: Vec<_> = hull.iter().map(|&l| s.point(l)).collect();
        check_area(side, s, t, doubled_signed_area(&hull_pts).abs())?;
    }
    for (side, s) in pair.sides() {
        let boundary = hull_edges(s).map_err(|e| Violation::Other(e.to_string()))?;
        check_edge_uses(side, t, &boundary)?;
    }
    Ok(())
}

pub(crate) fn check_empty(side: Side, s: &LabeledSet, tri: IndexTriangle) -> Result<(), Violation> {
    let pts = s.triangle(tri.labels());
    if doubled_area(pts) == 0 {
        return Err(Violation::Degenerate { side, triangle: tri });
    }
    if let Some(r) = (0..s.len() as u32)
        .filter(|&r| !tri.contains(r))
        .find(|&r| triangle_contains(pts, s.point(r), ContainMode::ClosedMinusVertices))
    {
        return Err(Violation::NonEmpty { side, triangle: tri, point: r });
    }
    Ok(())
}

pub(crate) fn check_disjoint(side: Side, s: &LabeledSet, t: &TriangleSet) -> Result<(), Violation> {
    let list: Vec<_> = t.iter().map(|tri| (tri, s.triangle(tri.labels()))).collect();
    for (i, &(t1, p1)) in list.iter().enumerate() {
        for &(t2, p2) in &list[i + 1..] {
            if interiors_overlap(p1, p2) {
                return Err(Violation::Overlap { side, first: t1, second: t2 });
            }
        }
    }
    Ok(())
}

pub(crate) fn check_area(side: Side, s: &LabeledSet, t: &TriangleSet, region: i128) -> Result<(), Violation> {
    let covered: i128 = t.iter().map(|tri| doubled_area(s.triangle(tri.labels()))).sum();
    if covered != region {
        return Err(Violation::AreaMismatch { side, covered, hull: region });
    }
    Ok(())
}

pub(crate) fn check_edge_uses(side: Side, t: &TriangleSet, boundary: &BTreeSet<Edge>) -> Result<(), Violation> {
    let mut uses: HashMap<Edge, usize> = HashMap::new();
    for tri in t.iter() {
        for e in tri.edges() {
            *uses.entry(e).or_default() += 1;
        }
    }
    for &e in boundary {
        let u = uses.get(&e).copied().unwrap_or(0);
        if u != 1 {
            return Err(Violation::HullEdgeUse { side, edge: e, uses: u });
        }
    }
    let mut interior: Vec<_> = uses.into_iter().filter(|(e, _)| !boundary.contains(e)).collect();
    interior.sort_unstable();
    if let Some(&(edge, uses)) = interior.iter().find(|(_, u)| *u != 2) {
        return Err(Violation::InteriorEdgeUse { side, edge, uses });
    }
    Ok(())
}

/// Triangle count of any triangulation of `s`: `2n - h - 2`, where `h`
/// counts every point on the hull boundary.
pub fn euler_triangle_count(s: &LabeledSet) -> Option<usize> {
    let h = convex_hull(s.points()).ok()?.len();
    Some(2 * s.len() - h - 2)
}
