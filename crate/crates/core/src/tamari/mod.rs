//! Tamari lattices on plane binary trees, canopies, and per-interval statistics.

mod lattice;
mod stats;
mod tree;

pub use lattice::{DoubleLetter, IntervalCanopyWord, TamariLattice};
pub use stats::{
    distribution, interval_statistics, interval_statistics_with, write_statistics_csv,
    DistributionTable, IntervalRecord, Stat, MAX_N_DEGREES, MAX_N_Q,
};
pub use tree::{Canopy, Composition, PlaneBinaryTree, Side};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TamariError {
    #[error("n = {n} outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("tree parse error: {0}")]
    Parse(String),
    #[error("tree {0} is not an element of this lattice")]
    UnknownTree(String),
    #[error("({0}, {1}) is not an interval")]
    NotAnInterval(String, String),
}
