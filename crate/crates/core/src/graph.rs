//! Immutable bipartite graph model.
//!
//! Vertices are dense integer ids. Colour class 1 is `0..n1`, colour class 2
//! is `n1..n1 + n2`. Edges are stored normalised as `(class-1 end, class-2 end)`
//! and sorted, which keeps every derived structure deterministic.

use std::collections::VecDeque;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type Vertex = usize;

/// An edge, always normalised as `(class-1 endpoint, class-2 endpoint)`.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    One,
    Two,
}

impl Class {
    pub fn other(self) -> Class {
        match self {
            Class::One => Class::Two,
            Class::Two => Class::One,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n1: usize,
    n2: usize,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for BipartiteGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        BipartiteGraph::new(raw.n1, raw.n2, raw.edges)
    }
}

impl From<BipartiteGraph> for RawGraph {
    fn from(g: BipartiteGraph) -> Self {
        RawGraph {
            n1: g.n1,
            n2: g.n2,
            edges: g.edges,
        }
    }
}

/// A graph derived from another one by deleting or keeping vertices.
/// `origin[new_id]` is the id of the vertex in the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: BipartiteGraph,
    pub origin: Vec<Vertex>,
}

impl Subgraph {
    /// Inverse of `origin`: parent id to new id.
    pub fn index_of(&self, parent: Vertex) -> Option<Vertex> {
        self.origin.iter().position(|&v| v == parent)
    }
}

impl BipartiteGraph {
    /// Builds a simple bipartite graph. Edge endpoints may be given in either
    /// order; duplicates are rejected.
    pub fn new(
        n1: usize,
        n2: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        Self::build(n1, n2, edges, false)
    }

    /// Like [`BipartiteGraph::new`] but silently merges parallel edges.
    pub fn new_merged(
        n1: usize,
        n2: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        Self::build(n1, n2, edges, true)
    }

    fn build(
        n1: usize,
        n2: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
        merge: bool,
    ) -> Result<Self, GraphError> {
        let count = n1 + n2;
        let mut normalised = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= count {
                    return Err(GraphError::VertexOutOfRange { vertex: w, count });
                }
            }
            let e = match (u < n1, v < n1) {
                (true, false) => (u, v),
                (false, true) => (v, u),
                _ => return Err(GraphError::IntraClassEdge(u, v)),
            };
            normalised.push(e);
        }
        normalised.sort_unstable();
        if merge {
            normalised.dedup();
        } else if let Some(w) = normalised.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); count];
        for &(u, v) in &normalised {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(BipartiteGraph {
            n1,
            n2,
            edges: normalised,
            adj,
        })
    }

    /// Complete bipartite graph K_{n1,n2}.
    pub fn complete(n1: usize, n2: usize) -> Self {
        let edges = (0..n1).flat_map(|u| (n1..n1 + n2).map(move |v| (u, v)));
        Self::new(n1, n2, edges).expect("complete bipartite graph is simple")
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn vertex_count(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn class1(&self) -> Range<Vertex> {
        0..self.n1
    }

    pub fn class2(&self) -> Range<Vertex> {
        self.n1..self.n1 + self.n2
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v < self.vertex_count()
    }

    pub fn is_class1(&self, v: Vertex) -> bool {
        v < self.n1
    }

    pub fn class_of(&self, v: Vertex) -> Class {
        if v < self.n1 {
            Class::One
        } else {
            Class::Two
        }
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Normalises an unordered pair into `(class-1, class-2)` order, or
    /// `None` when both ends lie in the same class.
    pub fn normalise(&self, u: Vertex, v: Vertex) -> Option<Edge> {
        match (self.is_class1(u), self.is_class1(v)) {
            (true, false) => Some((u, v)),
            (false, true) => Some((v, u)),
            _ => None,
        }
    }

    /// Index of an edge in `edges()`.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_where(|_| true)
    }

    /// Connected components of the subgraph induced by vertices accepted by `keep`.
    pub fn components_where(&self, keep: impl Fn(Vertex) -> bool) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] || !keep(s) {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] && keep(w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `keep` (any order, duplicates ignored). New ids
    /// preserve the relative order inside each colour class.
    pub fn induced(&self, keep: &[Vertex]) -> Subgraph {
        let mut mask = vec![false; self.vertex_count()];
        for &v in keep {
            mask[v] = true;
        }
        self.induced_mask(&mask)
    }

    pub fn remove_vertices(&self, removed: &[Vertex]) -> Subgraph {
        let mut mask = vec![true; self.vertex_count()];
        for &v in removed {
            mask[v] = false;
        }
        self.induced_mask(&mask)
    }

    fn induced_mask(&self, mask: &[bool]) -> Subgraph {
        let origin: Vec<Vertex> = self.vertices().filter(|&v| mask[v]).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in origin.iter().enumerate() {
            new_id[v] = i;
        }
        let n1 = origin.iter().filter(|&&v| self.is_class1(v)).count();
        let n2 = origin.len() - n1;
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| mask[u] && mask[v])
            .map(|&(u, v)| (new_id[u], new_id[v]));
        let graph = BipartiteGraph::new(n1, n2, edges).expect("induced subgraph stays simple");
        Subgraph { graph, origin }
    }

    /// Same vertex set, restricted to the given edges (which must exist).
    pub fn spanning_subgraph(&self, edges: impl IntoIterator<Item = Edge>) -> BipartiteGraph {
        BipartiteGraph::new_merged(self.n1, self.n2, edges).expect("edges come from this graph")
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`. With `swap` the old
    /// class 1 must land in the new class 2 and the class sizes are exchanged.
    pub fn relabel(&self, perm: &[Vertex], swap: bool) -> Result<BipartiteGraph, GraphError> {
        let (n1, n2) = if swap {
            (self.n2, self.n1)
        } else {
            (self.n1, self.n2)
        };
        BipartiteGraph::new(n1, n2, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Graph with the two colour classes exchanged.
    pub fn swap_classes(&self) -> BipartiteGraph {
        let perm: Vec<Vertex> = self
            .vertices()
            .map(|v| if v < self.n1 { v + self.n2 } else { v - self.n1 })
            .collect();
        self.relabel(&perm, true).expect("class swap is a bijection")
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}
