use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conditions::PointSetPair;
use crate::error::{Error, Result};
use crate::geom::{doubled_signed_area, orient, segments_intersect, LabeledSet, Orientation, Point};
use crate::polygon::{PolygonPair, SimplePolygon};

const POLYGON_ATTEMPTS: usize = 64;
const UNTANGLE_CAP: usize = 100_000;

/// How the second set of a pair relates to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    /// Both sides drawn independently and uniformly.
    Independent,
    /// Second side is the first with every point moved by at most `jitter`
    /// in each coordinate.
    Perturbed { jitter: i64 },
}

fn check_grid(n: usize, range: i64) -> Result<()> {
    let side = range.max(0) as u64 + 1;
    if range < 0 || (side as u128 * side as u128) < n as u128 {
        return Err(Error::GridTooSmall { n, side });
    }
    Ok(())
}

fn all_collinear(p: &[Point]) -> bool {
    p.len() < 3 || (2..p.len()).all(|k| orient(p[0], p[1], p[k]) == Orientation::Collinear)
}

fn has_collinear_triple(p: &[Point]) -> bool {
    let n = p.len();
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| orient(p[i], p[j], p[k]) == Orientation::Collinear)))
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Point> {
    let mut seen = HashSet::new();
    let mut v = Vec::with_capacity(n);
    while v.len() < n {
        let p = Point::new(rng.gen_range(0..=range), rng.gen_range(0..=range));
        if seen.insert(p) {
            v.push(p);
        }
    }
    v
}

/// A set that is not entirely collinear. Falls back to any distinct set
/// when the grid cannot avoid it (`range = 0`, or three points on a line).
fn point_set(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Point> {
    for _ in 0..1000 {
        let v = distinct_points(rng, n, range);
        if !all_collinear(&v) {
            return v;
        }
    }
    distinct_points(rng, n, range)
}

/// Two independent uniform sets of `n` distinct points in `[0, range]^2`.
/// Deterministic per seed; fully collinear draws are redrawn.
pub fn gen_point_pair(n: usize, range: i64, seed: u64) -> Result<PointSetPair> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    check_grid(n, range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = point_set(&mut rng, n, range);
    let b = point_set(&mut rng, n, range);
    PointSetPair::new(LabeledSet::new(a)?, LabeledSet::new(b)?)
}

fn jitter_points(rng: &mut ChaCha8Rng, a: &[Point], range: i64, jitter: i64) -> Vec<Point> {
    let mut seen = HashSet::new();
    let mut b = Vec::with_capacity(a.len());
    for &p in a {
        loop {
            let q = Point::new(
                (p.x + rng.gen_range(-jitter..=jitter)).clamp(0, range),
                (p.y + rng.gen_range(-jitter..=jitter)).clamp(0, range),
            );
            if seen.insert(q) {
                b.push(q);
                break;
            }
            if jitter == 0 {
                // cannot move: fall back to a fresh random spot
                let q = Point::new(rng.gen_range(0..=range), rng.gen_range(0..=range));
                if seen.insert(q) {
                    b.push(q);
                    break;
                }
            }
        }
    }
    b
}

/// Uniform first side; the second side displaces each point by at most
/// `jitter` per coordinate (clamped to the grid, duplicates redrawn).
pub fn gen_point_pair_perturbed(n: usize, range: i64, jitter: i64, seed: u64) -> Result<PointSetPair> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    check_grid(n, range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = point_set(&mut rng, n, range);
    let mut b = jitter_points(&mut rng, &a, range, jitter.max(0));
    for _ in 0..1000 {
        if !all_collinear(&b) {
            break;
        }
        b = jitter_points(&mut rng, &a, range, jitter.max(1));
    }
    PointSetPair::new(LabeledSet::new(a)?, LabeledSet::new(b)?)
}

/// Reverses the chain between the first pair of crossing edges until the
/// boundary is simple. Each reversal shortens the tour, so this ends.
fn untangle(points: &[Point], order: &mut [usize]) -> bool {
    let n = order.len();
    for _ in 0..UNTANGLE_CAP {
        let p = |i: usize| points[order[i % n]];
        let mut swapped = false;
        'scan: for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_intersect(p(i), p(i + 1), p(j), p(j + 1)) {
                    order[i + 1..=j].reverse();
                    swapped = true;
                    break 'scan;
                }
            }
        }
        if !swapped {
            return true;
        }
    }
    false
}

fn orient_ccw(mut v: Vec<Point>) -> Vec<Point> {
    if doubled_signed_area(&v) < 0 {
        v.reverse();
    }
    v
}

/// A random simple polygon on `n` points in general position, oriented
/// counterclockwise.
pub fn random_simple_polygon(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Result<SimplePolygon> {
    for _ in 0..POLYGON_ATTEMPTS {
        let pts = distinct_points(rng, n, range);
        if has_collinear_triple(&pts) {
            continue;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        if !untangle(&pts, &mut order) {
            continue;
        }
        let v = orient_ccw(order.iter().map(|&i| pts[i]).collect());
        if let Ok(p) = SimplePolygon::new(v) {
            return Ok(p);
        }
    }
    Err(Error::GenerationFailed(POLYGON_ATTEMPTS))
}

/// Two independent random simple polygons, both counterclockwise.
pub fn gen_polygon_pair(n: usize, range: i64, seed: u64) -> Result<PolygonPair> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    check_grid(n, range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..POLYGON_ATTEMPTS {
        let a = random_simple_polygon(&mut rng, n, range)?;
        let b = random_simple_polygon(&mut rng, n, range)?;
        if let Ok(pair) = PolygonPair::new(a, b) {
            return Ok(pair);
        }
    }
    Err(Error::GenerationFailed(POLYGON_ATTEMPTS))
}

/// A random simple polygon and a jittered copy that is still simple and in
/// general position. Gives up after a bounded number of redraws.
pub fn gen_polygon_pair_perturbed(n: usize, range: i64, jitter: i64, seed: u64) -> Result<PolygonPair> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    check_grid(n, range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..POLYGON_ATTEMPTS {
        let a = random_simple_polygon(&mut rng, n, range)?;
        for _ in 0..POLYGON_ATTEMPTS {
            let b = jitter_points(&mut rng, a.vertices(), range, jitter.max(1));
            if has_collinear_triple(&b) {
                continue;
            }
            let Ok(b) = SimplePolygon::new(b) else { continue };
            if let Ok(pair) = PolygonPair::new(a.clone(), b) {
                return Ok(pair);
            }
        }
    }
    Err(Error::GenerationFailed(POLYGON_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_pairs_are_deterministic() {
        let p = gen_point_pair(5, 100, 1).unwrap();
        let q = gen_point_pair(5, 100, 1).unwrap();
        assert_eq!(p, q);
        assert_ne!(p, gen_point_pair(5, 100, 2).unwrap());
    }

    #[test]
    fn unit_grid_holds_four_points() {
        assert!(gen_point_pair(4, 1, 9).is_ok());
        assert!(matches!(gen_point_pair(5, 1, 9), Err(Error::GridTooSmall { n: 5, side: 2 })));
        assert!(gen_point_pair(3, 0, 0).is_err());
    }

    #[test]
    fn perturbed_pairs_stay_close() {
        let p = gen_point_pair_perturbed(8, 100, 3, 4).unwrap();
        for (a, b) in p.a().points().iter().zip(p.b().points()) {
            assert!((a.x - b.x).abs() <= 3 && (a.y - b.y).abs() <= 3);
        }
        assert_eq!(p, gen_point_pair_perturbed(8, 100, 3, 4).unwrap());
    }

    #[test]
    fn polygons_are_simple_and_ccw() {
        for seed in 0..20 {
            let p = gen_polygon_pair(8, 50, seed).unwrap();
            assert!(p.a().is_ccw() && p.b().is_ccw());
            assert!(doubled_signed_area(p.a().vertices()) > 0);
            // SimplePolygon::new already rejects crossings; re-run it
            assert!(SimplePolygon::new(p.a().vertices().to_vec()).is_ok());
            assert!(SimplePolygon::new(p.b().vertices().to_vec()).is_ok());
        }
        let tri = gen_polygon_pair(3, 10, 5).unwrap();
        assert_eq!(tri.len(), 3);
    }

    #[test]
    fn perturbed_polygons() {
        let p = gen_polygon_pair_perturbed(9, 100, 4, 11).unwrap();
        assert_eq!(p.len(), 9);
        assert!(p.a().is_ccw());
    }
}
