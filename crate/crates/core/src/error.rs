use thiserror::Error;

use crate::graph::{Edge, Vertex};

/// Construction errors for [`crate::BipartiteGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph with {count} vertices")]
    VertexOutOfRange { vertex: Vertex, count: usize },
    #[error("edge {0}-{1} joins two vertices of the same colour class")]
    IntraClassEdge(Vertex, Vertex),
    #[error("edge {0}-{1} appears more than once")]
    DuplicateEdge(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} does not exist")]
    UnknownVertex(Vertex),
    #[error("edge {}-{} is not an edge of the graph", .0.0, .0.1)]
    MissingEdge(Edge),
    #[error("edges are not pairwise disjoint at vertex {0}")]
    NotAMatching(Vertex),
    #[error("the graph has no perfect matching")]
    NoPerfectMatching,
    #[error("the matching is not perfect")]
    NotPerfect,
    #[error("the graph is not matching covered")]
    NotMatchingCovered,
    #[error("the graph is not a brace")]
    NotBrace,
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("invalid tight cut shore: {0}")]
    InvalidShore(String),
    #[error("invalid 4-cycle sum: {0}")]
    InvalidSum(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("structural anomaly: {0}")]
    StructuralAnomaly(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
