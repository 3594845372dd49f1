//! Exact and heuristic partitioning of signed networks into internally
//! cohesive, mutually divisive clusters.
//!
//! A signed network carries `+1` (collaboration) and `-1` (opposition)
//! edges. Under a partition of its nodes, an edge is *frustrated* when it is
//! positive across clusters or negative within one. This crate computes, with
//! proof of optimality,
//!
//! * the minimum frustration over partitions into at most `k` clusters
//!   ([`solve_k`]),
//! * the minimum over partitions of any cluster count ([`solve_unbounded`]),
//! * the smallest `k` at which the two meet ([`stagnation_curve`]),
//!
//! plus a restarted local-search heuristic ([`local_search`]), exhaustive
//! enumeration oracles ([`oracle`]), binary linear program export/import for
//! cross-validation against external MILP solvers ([`milp`]), and coalition
//! composition statistics over node attributes ([`analysis`]).
//!
//! ```
//! use clusterability::{solve_k, solve_unbounded, SignedGraph};
//!
//! let g = SignedGraph::from_edges([
//!     ("1", "3", 1),
//!     ("2", "3", 1),
//!     ("1", "4", -1),
//!     ("1", "5", -1),
//!     ("2", "5", -1),
//!     ("3", "4", -1),
//!     ("4", "5", -1),
//! ])?;
//! assert_eq!(solve_k(&g, 2)?.optimum, 1);
//! assert_eq!(solve_k(&g, 3)?.optimum, 0);
//! assert_eq!(solve_unbounded(&g)?.optimum, 0);
//! # Ok::<(), clusterability::Error>(())
//! ```
//!
//! Start from the `examples/` directory for runnable walkthroughs of each
//! capability; the `clusterability` binary exposes the same operations on
//! CSV files.

pub mod analysis;
pub mod cli;
mod error;
pub mod frustration;
pub mod graph;
pub mod heuristic;
pub mod io;
pub mod milp;
pub mod oracle;
pub mod solver;
pub mod synthetic;

pub use error::{Error, Result};
pub use frustration::{
    check_transitivity, count_frustration, pairwise_objective, FrustrationReport, PairIndicator,
};
pub use graph::{NodeAttributes, Partition, SignedGraph, TriadSet};
pub use heuristic::{local_search, HeuristicConfig};
pub use solver::{
    solve_k, solve_k_with, solve_unbounded, solve_unbounded_with, stagnation_curve, KMinStar,
    SolveOptions, SolveResult, SolveStatus, StagnationCurve,
};

/// Default RNG seed used by the heuristic and the CLI `--seed` flag.
pub const DEFAULT_SEED: u64 = 20_487_351;
