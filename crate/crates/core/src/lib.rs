//! Bipartite matching structure: M-directions, tight cuts and brace
//! decompositions, K3,3 recognition in braces, and a polynomial decision
//! procedure for the two-pair matching linkage problem, with brute-force
//! oracles to check it against.

pub mod braces;
pub mod compose;
pub mod conformal;
pub mod corpus;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod iso;
pub mod k33;
pub mod matching;
pub mod mdirection;
pub mod mlp;
pub mod oracle;
pub mod planarity;

pub use error::{Error, GraphError, Result};
pub use generators::{generate, NamedGraph};
pub use graph::{BipartiteGraph, Class, Edge, Subgraph, Vertex};
pub use matching::Matching;
pub use mdirection::{Digraph, MDirection, Node};
