//! Vertex connectivity of undirected and directed graphs by reduction to
//! s-t maxflow, with isolating-cuts and sketch-based kernelization detectors,
//! a Nagamochi-Ibaraki sparsifying certificate, and exhaustive oracles for
//! verification.

pub mod certificate;
pub mod directed;
pub mod driver;
pub mod families;
pub mod graph;
pub mod io;
pub mod isolating;
pub mod kernel;
pub mod maxflow;
pub mod oracle;
pub mod rng;
pub mod sketch;

pub use driver::{vertex_connectivity, RunConfig, RunStats};
pub use graph::{
    cut_from_separator, directed_cut_from_separator, validate_directed_cut, validate_vertex_cut,
    ConnectivityResult, DirectedGraph, UndirectedGraph, VertexCut, VertexId, Witness,
};
pub use maxflow::{FlowStats, FlowTracker, SeparatorResult};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("empty graph (no vertices)")]
    EmptyGraph,
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("terminals are adjacent; no separator exists")]
    AdjacentTerminals,
    #[error("sketches come from different contexts")]
    ContextMismatch,
    #[error("graph too large for exhaustive enumeration (n = {0})")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
