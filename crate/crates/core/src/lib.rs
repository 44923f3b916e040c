//! Exact combinatorics of the convex hull of parking functions.
//!
//! The polytope `P_n` is the convex hull in `R^n` of all parking functions
//! of length `n`. This crate computes its vertices, edge graph, f-vector,
//! volume and lattice-point counts. Every closed-form route is paired with
//! an independent brute-force route so the two can be checked against
//! each other (see [`verify`]).

pub mod error;
pub mod faces;
pub mod lattice;
pub mod numerics;
pub mod polytope;
pub mod scan;
pub mod verify;
pub mod volume;

pub use error::{Error, Result};
pub use numerics::{BigInt, BigRational, RationalSeries};
pub use scan::ScanConfig;
