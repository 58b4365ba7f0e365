//! Certification and solving for common fixed points of set-valued map pairs
//! on the hyperspace of a metric space carrying a directed graph.
//!
//! Everything is exact: distances, gauge values and contraction bounds are
//! [`rational::Rational`]s, and every refutation carries a witness that can be
//! re-evaluated.

// Error enums carry exact rational witnesses; they are cold paths.
#![allow(clippy::result_large_err)]

pub mod certify;
pub mod cli;
pub mod corpus;
pub mod gauge;
pub mod graph;
pub mod instance;
pub mod interval;
pub mod maps;
pub mod metric;
pub mod rational;
pub mod report;
pub mod solver;
pub mod universe;
