//! Sparse random graphs, their exact diameters, and the branching-process
//! machinery that predicts them.
//!
//! The crate has three layers:
//!
//! * graph structure: generation ([`graph`]), exact diameter ([`diameter`]),
//!   and 2-core / kernel / attached-tree decomposition ([`core`]);
//! * branching processes: deterministic numerics for the survival fixed
//!   point, dual parameter and diameter predictions ([`numerics`]), Monte
//!   Carlo simulation of Poisson Galton-Watson processes ([`simulator`]),
//!   and the limiting correction-term distribution ([`limit`]);
//! * the [`experiment`] harness that ties graphs and predictions together
//!   into reproducible JSONL campaigns.
//!
//! Everything randomized is driven by ChaCha8 streams derived from a master
//! seed (see [`rng`]), so results are reproducible across runs and thread
//! counts.

pub mod core;
pub mod diameter;
pub mod experiment;
pub mod graph;
pub mod limit;
pub mod numerics;
pub mod rng;
pub mod simulator;
pub mod stats;
pub mod thresholds;

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    /// An argument was outside its documented range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A file or stream did not match the edge-list format.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A precondition stated in an operation contract was violated.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A numeric routine could not reach its accuracy target.
    #[error("precision error: {0}")]
    Precision(String),
    /// Inside the scaling window |eps|^3 n = O(1) the diameter formulas do
    /// not apply; there is no unique giant component to predict against.
    #[error("window regime unsupported: {0}")]
    Window(String),
    /// A truncated computation could not certify its result.
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
