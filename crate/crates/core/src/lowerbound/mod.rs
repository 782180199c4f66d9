//! Exhaustive tools behind the lower bounds: incidence graphs, induced
//! matchings and MIM-width, the `F̂` transform, and minimum rectangle covers.
//! Everything here is exponential and guarded by explicit caps.

pub mod graph;
pub mod hat;
pub mod mimw;
pub mod rectangle;

use thiserror::Error;

use crate::hypergraph::{HypergraphError, NotBetaAcyclic};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("{what} has {size} elements, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("vertex 0 is not a valid id")]
    ZeroVertex,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("decomposition leaves are not in bijection with the graph vertices")]
    NotBijective,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("Y and Z must partition the function's variables")]
    NotPartition,
    #[error(transparent)]
    NotBetaAcyclic(#[from] NotBetaAcyclic),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}
