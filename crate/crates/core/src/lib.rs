//! Joint triangulations of two labeled point sets under a fixed bijection,
//! and of two simple polygons.
//!
//! All predicates are exact: coordinates are `i64` bounded by
//! [`geom::COORD_LIMIT`] and determinants are evaluated in `i128`.

pub mod cli;
pub mod conditions;
pub mod empty;
pub mod error;
pub mod geom;
pub mod greedy;
pub mod io;
pub mod oracle;
pub mod polygon;
pub mod svg;

pub use error::{Error, Result};
