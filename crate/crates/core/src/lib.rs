//! Solver library for the group feedback vertex set problem on
//! group-labeled graphs.
//!
//! A labeled graph carries a group element on every arc, with the reverse
//! arc carrying the inverse. A cycle is *non-null* when the ordered product
//! of its arc labels differs from the group identity, and a solution is a
//! set of at most `k` vertices whose removal leaves no non-null cycle.
//!
//! The crate ships:
//!
//! * [`group`] — the group oracle (cyclic, bit-vector, symmetric and free
//!   groups behind one opaque-element interface),
//! * [`graph`] — the labeled graph, consistent labelings and witness cycles,
//! * [`encode`] — reductions from FVS, OCT, multiway cut and edge-subset
//!   FVS into labeled-graph instances,
//! * [`mwc`] — an FPT multiway cut solver and a vertex min-cut kernel,
//! * [`compress`] — the compression step (untangling, reduction rules,
//!   boundary-labeling enumeration, fixed-labeling reduction),
//! * [`solver`] — the top-level solver via iterative compression,
//! * [`brute`] — exponential reference oracles for verification.

pub mod brute;
pub mod compress;
pub mod encode;
mod error;
pub mod graph;
pub mod group;
pub mod mwc;
pub mod solver;
pub mod undirected;

pub use error::{Error, Result};
pub use graph::{LabeledGraph, Labeling, LabelingResult, NonNullWitness};
pub use group::{GroupElement, GroupOracle, GroupSpec};
pub use solver::GfvsInstance;
pub use undirected::UndirectedGraph;
