//! Exact Widom–Rowlinson computations on finite graphs.
//!
//! The crate computes partition polynomials and occupancy fractions exactly,
//! builds the local-configuration linear program for `d`-regular graphs, checks
//! its dual certificate and tight set, compares catalog graphs against
//! `K_{d+1}`, and runs Glauber dynamics for graphs too large to enumerate.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod extremal;
pub mod graphs;
pub mod lp;
pub mod numerics;
pub mod occupancy;
pub mod partition;

pub use error::{Error, Result};
pub use graphs::{Graph, VertexSubset};
pub use numerics::{BigInt, BivariatePolynomial, IntPolynomial, Rational};
