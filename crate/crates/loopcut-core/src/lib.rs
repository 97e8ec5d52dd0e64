//! Solvers for the minimum-weight feedback vertex set problem and the
//! Bayesian-network loop cutset problem.
//!
//! The library provides:
//!
//! * [`graph`] — a weighted undirected multigraph with parallel edges and
//!   self-loops, plus feedback-vertex-set predicates;
//! * [`reduce`] — kernelizing reductions to rich and branchy graphs that
//!   harvest forced cutset vertices;
//! * [`sample`] — the degree-proportional and degree-over-weight random
//!   selection rules;
//! * [`solver`] — randomized restart solvers, including the anytime driver
//!   [`solver::wra`];
//! * [`bayes`] — the splitting-graph reduction from directed networks and
//!   the loop cutset pipeline;
//! * [`oracle`] — an exact brute-force optimum and a deterministic greedy
//!   baseline;
//! * [`bench`] — seeded random DAG generation, comparison suites and table
//!   output;
//! * [`formats`] — the `.wgr` and `.bn` text formats.

pub mod bayes;
pub mod bench;
pub mod formats;
pub mod graph;
pub mod oracle;
pub mod reduce;
pub mod sample;
pub mod solver;

pub use bayes::{is_loop_cutset, loop_cutset, loop_cutset_traced, split_graph, BayesianDag, SplitGraph};
pub use graph::{PartitionStats, VertexId, Weight, WeightedMultigraph};
pub use oracle::{brute_force_min_wfvs, greedy_wfvs, OracleResult};
pub use reduce::{reduce_to_branchy, reduce_to_rich, Reduction};
pub use solver::{
    repeated_guess, repeated_weighted_guess, single_guess, single_weighted_guess,
    single_weighted_guess_ratio, wra, wra_traced, AlgorithmParams, CutsetResult, Improvement,
};
