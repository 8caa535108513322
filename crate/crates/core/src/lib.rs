//! Exact computations for real hyperplane arrangements.
//!
//! Everything here is exact: rational arithmetic, seeded randomness, no
//! floating point anywhere. The main pipeline goes
//! arrangement -> intersection posets -> chambers -> generic flag ->
//! stratification -> cochain complexes (Orlik-Solomon/Aomoto on one side,
//! chamber complexes on the other) -> cohomology and unit-determinant
//! certificates.

// Dense matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod arrangement;
pub mod chamber_complex;
pub mod corpus;
pub mod error;
pub mod flag;
pub mod linalg;
pub mod lp;
pub mod os;
pub mod poly;
pub mod rat;
pub mod ratmat;
pub mod ring;
pub mod verify;

pub use error::Error;

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
