//! Solvers for two partition problems on vertex-colored graphs.
//!
//! Both problems delete a set of edges so that every remaining connected
//! component is *colorful* (no color repeated inside a component):
//!
//! * **MCC** (Minimum Colorful Components) minimizes the number of
//!   components.
//! * **MEC** (Maximum Edges in transitive Closure) maximizes
//!   `sum n_i * (n_i - 1) / 2` over the component sizes.
//!
//! The crate provides exhaustive oracles for desk-scale instances, `O(n^3)`
//! dynamic programs for paths, an exact tree solver for MCC via a reduction
//! to multicut on trees (with a branching FPT solver and a primal-dual
//! 2-approximation), kernelizations for the MEC decision problem, a
//! color-coding dynamic program for MEC on trees, and hardness-gadget
//! instance generators.

pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod mec_fpt;
pub mod mec_kernel;
pub mod multicut;
pub mod oracle;
pub mod path_dp;

pub use error::{Error, Result};
pub use graph::{is_colorful_partition, ColoredGraph, Partition, Problem, SolveResult};
