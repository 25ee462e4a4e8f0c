//! Exhaustive ground truth for small instances, random instance generation,
//! and the randomized counterexample hunt.

mod generate;
mod hunt;

pub use generate::{
    gen_point_pair, gen_point_pair_perturbed, gen_polygon_pair, gen_polygon_pair_perturbed, random_simple_polygon,
    Distribution,
};
pub use hunt::{hunt, Counterexample, CounterexampleKind, HuntConfig, HuntMode, HuntReport};

use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::ControlFlow;

use crate::conditions::{hull_edges, PointSetPair};
use crate::empty::{enumerate_empty, Edge, IndexTriangle, TriangleSet};
use crate::error::{Error, Result};
use crate::geom::{convex_hull, interiors_overlap, orient, segments_cross_properly, LabeledSet, Orientation, Point};
use crate::greedy::verify_joint;
use crate::polygon::{is_boundary, verify_polygon_joint, PolygonPair};

/// Largest point set the exhaustive enumerator accepts.
pub const MAX_ORACLE_POINTS: usize = 9;
/// Largest polygon the exhaustive diagonal search accepts.
pub const MAX_ORACLE_POLYGON: usize = 10;

/// Calls `visit` once per triangulation of `s`, each given as its component
/// triangles. Stops early when `visit` breaks.
///
/// Frontier expansion: the frontier holds directed edges whose left side is
/// still uncovered (initially the hull, counterclockwise). The smallest
/// frontier edge is covered by each empty triangle on its left in turn.
/// Every triangulation has exactly one triangle there, so each one is
/// reached along exactly one branch.
pub fn for_each_triangulation(
    s: &LabeledSet,
    mut visit: impl FnMut(&TriangleSet) -> ControlFlow<()>,
) -> Result<()> {
    let n = s.len();
    if n > MAX_ORACLE_POINTS {
        return Err(Error::SizeGuard { n, limit: MAX_ORACLE_POINTS });
    }
    let hull = convex_hull(s.points())?;
    let hull_set = hull_edges(s)?;

    let mut apexes: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for t in enumerate_empty(s).iter() {
        let [a, b, c] = t.labels();
        let [pa, pb, pc] = s.triangle([a, b, c]);
        let (a, b, c) = if orient(pa, pb, pc) == Orientation::Ccw { (a, b, c) } else { (a, c, b) };
        for (u, v, w) in [(a, b, c), (b, c, a), (c, a, b)] {
            apexes.entry((u, v)).or_default().push(w);
        }
    }
    for list in apexes.values_mut() {
        list.sort_unstable();
    }

    let mut frontier: BTreeSet<(u32, u32)> =
        (0..hull.len()).map(|i| (hull[i], hull[(i + 1) % hull.len()])).collect();
    let mut state = Search { s, apexes, hull: hull_set, chosen: Vec::new() };
    let _ = state.expand(&mut frontier, &mut visit);
    Ok(())
}

struct Search<'a> {
    s: &'a LabeledSet,
    apexes: HashMap<(u32, u32), Vec<u32>>,
    hull: BTreeSet<Edge>,
    chosen: Vec<(IndexTriangle, [Point; 3])>,
}

impl Search<'_> {
    fn expand(
        &mut self,
        frontier: &mut BTreeSet<(u32, u32)>,
        visit: &mut impl FnMut(&TriangleSet) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(&(u, v)) = frontier.iter().next() else {
            let t: TriangleSet = self.chosen.iter().map(|(t, _)| *t).collect();
            return visit(&t);
        };
        let candidates = self.apexes.get(&(u, v)).cloned().unwrap_or_default();
        for w in candidates {
            let tri = IndexTriangle::new(u, v, w);
            let pts = self.s.triangle(tri.labels());
            if self.chosen.iter().any(|&(_, q)| interiors_overlap(pts, q)) {
                continue;
            }
            let mut removed = vec![(u, v)];
            let mut added = Vec::new();
            let mut blocked = false;
            for (x, y) in [(v, w), (w, u)] {
                if frontier.contains(&(x, y)) {
                    removed.push((x, y));
                } else if self.hull.contains(&Edge::new(x, y)) {
                    // our side of a hull edge is already covered
                    blocked = true;
                } else {
                    added.push((y, x));
                }
            }
            if blocked {
                continue;
            }
            for e in &removed {
                frontier.remove(e);
            }
            for e in &added {
                frontier.insert(*e);
            }
            self.chosen.push((tri, pts));
            let flow = self.expand(frontier, visit);
            self.chosen.pop();
            for e in &added {
                frontier.remove(e);
            }
            for e in &removed {
                frontier.insert(*e);
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Up to `cap` distinct triangulations of `s`, in discovery order.
pub fn enumerate_triangulations(s: &LabeledSet, cap: usize) -> Result<Vec<TriangleSet>> {
    let mut seen: HashSet<Vec<IndexTriangle>> = HashSet::new();
    let mut out = Vec::new();
    if cap == 0 {
        return Ok(out);
    }
    for_each_triangulation(s, |t| {
        if seen.insert(t.iter().collect()) {
            out.push(t.clone());
        }
        if out.len() >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Decides joint-triangulation existence by trying every triangulation of
/// `a` against `b`. Returns the first witness found.
pub fn oracle_joint_exists(pair: &PointSetPair) -> Result<Option<TriangleSet>> {
    let mut witness = None;
    for_each_triangulation(pair.a(), |t| {
        if verify_joint(pair, t).is_ok() {
            witness = Some(t.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(witness)
}

/// Decides polygon joint-triangulation existence by searching sets of
/// `n - 3` shared diagonals that cross in neither realization.
pub fn polygon_oracle_exists(pair: &PolygonPair) -> Result<Option<TriangleSet>> {
    let n = pair.len();
    if n > MAX_ORACLE_POLYGON {
        return Err(Error::SizeGuard { n, limit: MAX_ORACLE_POLYGON });
    }
    let diagonals = pair.ivg().diagonals();
    let mut chosen = Vec::new();
    Ok(diagonal_search(pair, &diagonals, 0, &mut chosen))
}

fn crosses_in(poly: &[Point], e: Edge, f: Edge) -> bool {
    let ((a, b), (c, d)) = (e.labels(), f.labels());
    segments_cross_properly(poly[a as usize], poly[b as usize], poly[c as usize], poly[d as usize])
}

fn diagonal_search(pair: &PolygonPair, diagonals: &[Edge], from: usize, chosen: &mut Vec<Edge>) -> Option<TriangleSet> {
    let n = pair.len();
    let need = n - 3;
    if chosen.len() == need {
        let t = faces(n, chosen);
        return verify_polygon_joint(pair, &t).is_ok().then_some(t);
    }
    if diagonals.len() - from < need - chosen.len() {
        return None;
    }
    for idx in from..diagonals.len() {
        let d = diagonals[idx];
        let ok = chosen.iter().all(|&c| {
            !crosses_in(pair.a().vertices(), c, d) && !crosses_in(pair.b().vertices(), c, d)
        });
        if ok {
            chosen.push(d);
            if let Some(t) = diagonal_search(pair, diagonals, idx + 1, chosen) {
                return Some(t);
            }
            chosen.pop();
        }
    }
    None
}

/// Triangles of a polygon triangulation given by its diagonals: every
/// 3-cycle of boundary plus diagonals.
fn faces(n: usize, diagonals: &[Edge]) -> TriangleSet {
    let mut adj = vec![false; n * n];
    let mut link = |e: Edge| {
        let (i, j) = e.labels();
        adj[i as usize * n + j as usize] = true;
        adj[j as usize * n + i as usize] = true;
    };
    for i in 0..n as u32 {
        link(Edge::new(i, (i + 1) % n as u32));
    }
    for &d in diagonals {
        link(d);
    }
    debug_assert!(diagonals.iter().all(|&d| !is_boundary(n, d)));
    let mut out = TriangleSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if !adj[i * n + j] {
                continue;
            }
            for k in j + 1..n {
                if adj[i * n + k] && adj[j * n + k] {
                    out.insert(IndexTriangle::new(i as u32, j as u32, k as u32));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::euler_triangle_count;
    use crate::polygon::SimplePolygon;

    fn set(v: &[(i64, i64)]) -> LabeledSet {
        LabeledSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn convex(n: usize) -> LabeledSet {
        set(&(0..n as i64).map(|i| (i, i * i)).collect::<Vec<_>>())
    }

    #[test]
    fn single_triangle() {
        let s = set(&[(0, 0), (3, 0), (1, 2)]);
        let all = enumerate_triangulations(&s, usize::MAX).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].iter().collect::<Vec<_>>(), vec![IndexTriangle::new(0, 1, 2)]);
    }

    #[test]
    fn convex_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429];
        for n in 3..=9 {
            let all = enumerate_triangulations(&convex(n), usize::MAX).unwrap();
            assert_eq!(all.len(), catalan[n - 2], "n = {n}");
        }
    }

    #[test]
    fn square_with_center_has_one_triangulation() {
        // The center sits on both diagonals, so the only option is the fan.
        let s = set(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]);
        let all = enumerate_triangulations(&s, usize::MAX).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].len(), 4);
    }

    #[test]
    fn quad_with_interior_point_in_general_position() {
        // Hand count: the fan around the inner point, or either diagonal
        // with the inner point joined to the three corners on its side.
        let s = set(&[(0, 0), (4, 0), (4, 4), (0, 4), (1, 2)]);
        let all = enumerate_triangulations(&s, usize::MAX).unwrap();
        assert_eq!(all.len(), 3);
        for t in &all {
            assert_eq!(t.len(), euler_triangle_count(&s).unwrap());
            let self_pair = PointSetPair::new(s.clone(), s.clone()).unwrap();
            assert_eq!(verify_joint(&self_pair, t), Ok(()));
        }
    }

    #[test]
    fn cap_and_guard() {
        assert_eq!(enumerate_triangulations(&convex(7), 5).unwrap().len(), 5);
        assert!(enumerate_triangulations(&convex(7), 0).unwrap().is_empty());
        assert!(matches!(enumerate_triangulations(&convex(10), 1), Err(Error::SizeGuard { n: 10, limit: 9 })));
    }

    #[test]
    fn oracle_on_squares() {
        let sq = set(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let same = PointSetPair::new(sq.clone(), sq.clone()).unwrap();
        assert!(oracle_joint_exists(&same).unwrap().is_some());
        let swapped = PointSetPair::new(sq, set(&[(0, 0), (2, 2), (2, 0), (0, 2)])).unwrap();
        assert!(oracle_joint_exists(&swapped).unwrap().is_none());
    }

    #[test]
    fn polygon_oracle_quads() {
        let poly = |v: &[(i64, i64)]| SimplePolygon::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap();
        let quad = poly(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let dart3 = poly(&[(0, 0), (4, 0), (1, 1), (0, 4)]);
        let dart2 = poly(&[(0, 0), (2, 1), (4, 0), (2, 4)]);
        let ok = PolygonPair::new(quad, dart3.clone()).unwrap();
        assert_eq!(polygon_oracle_exists(&ok).unwrap().unwrap().len(), 2);
        let clash = PolygonPair::new(dart3, dart2).unwrap();
        assert!(polygon_oracle_exists(&clash).unwrap().is_none());
    }
}
