//! Exact discrete off-diagonal Rado numbers over `{1..n}` by propagation and
//! backtracking.

pub(crate) mod engine;
mod search;
mod solutions;

pub use search::{
    compute_rado, exhaustive_valid, is_valid_discrete, propagate, search_valid, Conflict, DiscreteColoring,
    ScanEntry, SearchError, SearchOptions, SearchReport, SearchStats,
};
pub use solutions::{enumerate_solutions, IndexSolutions, IntegerSolution};
