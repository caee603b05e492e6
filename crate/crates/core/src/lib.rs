//! Quantum oracles for clique problems built on the 1-factorization of
//! complete graphs, with an exact statevector simulator to check them and a
//! harness to benchmark heuristic `k`-clique search.
//!
//! The pieces, bottom up:
//!
//! - [`graph`] and [`factorization`]: graphs, cliques, apex augmentation and
//!   the round-robin edge partition that fixes circuit layering.
//! - [`circuit`]: a layered gate IR with a depth cost model.
//! - [`sim`]: dense statevector simulation (qubit 0 is the least significant
//!   bit of a basis index).
//! - [`oracles`]: edge detectors, Alpha, the input preparator, Gamma and an
//!   exact marking baseline.
//! - [`search`]: Dicke-state search spaces and amplitude amplification.
//! - [`harness`] and [`edgelist`]: the benchmark protocol and its I/O.
//! - [`verify`]: named invariant suites used by the command-line tool.

pub mod circuit;
pub mod edgelist;
pub mod error;
pub mod factorization;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod search;
pub mod sim;
pub mod verify;

pub use circuit::{Circuit, CircuitBuilder, Control, DepthReport, Gate, GateKind, Polarity, Register};
pub use error::{Error, Result};
pub use factorization::{one_factorization, partition_edges, EdgePartition, OneFactor};
pub use graph::{augment_apex, list_k_cliques, random_induced_subgraph, AugmentedGraph, Edge, Graph};
pub use harness::{
    export_report, geometric_mean, run_benchmark, ExperimentConfig, ExperimentRecord, ExperimentReport,
    GraphSource, OracleChoice, ReportFormat,
};
pub use search::{optimal_iterations, run_aa, SearchSpaceSpec};
pub use sim::{MeasurementHistogram, Statevector};
