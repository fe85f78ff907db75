//! Exact maximum independent set solver built around a branch-and-reduce
//! engine with pluggable branching strategies.
//!
//! The pipeline: reduce the graph to a kernel with the rules in
//! [`reductions`], split connected components, prune with the bounds in
//! [`bounds`], then branch on a vertex chosen by one of the strategies in
//! [`branching`] (decomposition-based via [`separators`], or targeting the
//! almost-reducible structures harvested during reduction). Excluding
//! branches create [`packing`] constraints. [`oracle`] provides an
//! independent brute force for verification, [`io`] the instance formats and
//! [`bench`] the comparison harness.

pub mod bench;
pub mod bounds;
pub mod branching;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod packing;
pub mod pool;
pub mod reductions;
pub mod separators;
pub mod solver;

pub use branching::{BranchDecision, Strategy, StrategyState};
pub use graph::{is_independent_set, Checkpoint, Graph};
pub use oracle::brute_force_mis;
pub use solver::{solve, SolveReport, SolverConfig};
