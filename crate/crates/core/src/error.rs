use thiserror::Error;

use crate::geom::Point;

#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {label} {point} is outside the exact-arithmetic coordinate range")]
    CoordinateOutOfRange { label: usize, point: Point },
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("degenerate point set: all points are collinear")]
    DegeneratePointSet,
    #[error("point sets differ in size ({a} vs {b})")]
    SizeMismatch { a: usize, b: usize },
    #[error("polygon boundary is not simple: {0}")]
    NotSimple(String),
    #[error(
        "segment between vertices {i} and {j} passes through vertex {k} inside the polygon; \
         grazing visibility is not supported"
    )]
    GrazingDiagonal { i: usize, j: usize, k: usize },
    #[error("instance too large for exhaustive search: n = {n}, limit {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("cannot place {n} distinct points in a {side}x{side} grid")]
    GridTooSmall { n: usize, side: u64 },
    #[error("failed to generate a simple polygon after {0} attempts")]
    GenerationFailed(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
