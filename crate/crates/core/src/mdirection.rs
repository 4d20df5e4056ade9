//! Correspondence between bipartite graphs with a perfect matching and digraphs.
//!
//! Given a perfect matching `M`, every edge is oriented from colour class 1 to
//! colour class 2 and every `M`-edge is contracted. Node `i` of the resulting
//! digraph is the `M`-edge covering class-1 vertex `i`. A non-matching edge
//! `u v` (u in class 1) becomes the arc `node(u) -> node(v)`, so directed
//! paths are exactly internally `M`-conformal paths read from class 1 to class 2.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Vertex};
use crate::matching::Matching;

pub type Node = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDigraph", into = "RawDigraph")]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<Node>>,
}

#[derive(Serialize, Deserialize)]
struct RawDigraph {
    n: usize,
    arcs: Vec<(Node, Node)>,
}

impl TryFrom<RawDigraph> for Digraph {
    type Error = Error;

    fn try_from(raw: RawDigraph) -> Result<Self> {
        Digraph::new(raw.n, raw.arcs)
    }
}

impl From<Digraph> for RawDigraph {
    fn from(d: Digraph) -> Self {
        RawDigraph {
            n: d.n,
            arcs: d.arcs(),
        }
    }
}

impl Digraph {
    /// Simple digraph: loops and repeated arcs are rejected.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Node, Node)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::UnknownVertex(w));
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at node {u}")));
            }
            out[u].push(v);
        }
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate arc {u}->{}",
                    w[0]
                )));
            }
        }
        Ok(Digraph { n, out })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, u: Node) -> &[Node] {
        &self.out[u]
    }

    pub fn has_arc(&self, u: Node, v: Node) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(Node, Node)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
            .collect()
    }

    /// Nodes reachable from `s` (including `s`) while avoiding `blocked` nodes.
    pub fn reachable_from(&self, s: Node, blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        if blocked.get(s).copied().unwrap_or(false) {
            return seen;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.out[u] {
                if !seen[v] && !blocked.get(v).copied().unwrap_or(false) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Strongly connected components in topological order of the condensation
/// (every arc between components goes from an earlier to a later one).
/// Each component is sorted.
pub fn strong_components(d: &Digraph) -> Vec<Vec<Node>> {
    strong_components_masked(d, &vec![true; d.n])
}

/// Strong components of the subdigraph induced by nodes with `alive[u]`.
pub fn strong_components_masked(d: &Digraph, alive: &[bool]) -> Vec<Vec<Node>> {
    // Iterative Tarjan; components are emitted sinks first, so reverse at the end.
    let n = d.n;
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<Node> = Vec::new();
    let mut comps: Vec<Vec<Node>> = Vec::new();
    let mut counter = 0usize;
    let mut call: Vec<(Node, usize)> = Vec::new();

    for root in 0..n {
        if !alive[root] || index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let u = top.0;
            if top.1 < d.out[u].len() {
                let v = d.out[u][top.1];
                top.1 += 1;
                if !alive[v] {
                    continue;
                }
                if index[v] == usize::MAX {
                    index[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == u {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.reverse();
    comps
}

pub fn is_strongly_connected(d: &Digraph) -> bool {
    d.n <= 1 || strong_components(d).len() == 1
}

/// The digraph `D(B, M)` and the map from vertices of `B` to its nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MDirection {
    pub digraph: Digraph,
    pub node_of: Vec<Node>,
}

/// Orients `B` from class 1 to class 2 and contracts the perfect matching `M`.
pub fn m_direction(g: &BipartiteGraph, m: &Matching) -> Result<MDirection> {
    m.check_perfect_in(g)?;
    let n = g.n1();
    let mut node_of = vec![0; g.vertex_count()];
    for u in g.class1() {
        node_of[u] = u;
        node_of[m.mate(u).expect("perfect")] = u;
    }
    let arcs = g
        .edges()
        .iter()
        .filter(|&&(u, v)| !m.contains(u, v))
        .map(|&(u, v)| (node_of[u], node_of[v]));
    let digraph = Digraph::new(n, arcs)?;
    Ok(MDirection { digraph, node_of })
}

/// Inverse of [`m_direction`]: node `u` splits into class-1 vertex `u` and
/// class-2 vertex `n + u`, joined by a matching edge; arc `u -> v` becomes
/// the edge `u (n + v)`.
pub fn from_digraph(d: &Digraph) -> (BipartiteGraph, Matching) {
    let n = d.n;
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .map(|u| (u, n + u))
        .chain(d.arcs().into_iter().map(|(u, v)| (u, n + v)))
        .collect();
    let g = BipartiteGraph::new(n, n, edges).expect("digraph is simple and loop-free");
    let pairs: Vec<(Vertex, Vertex)> = (0..n).map(|u| (u, n + u)).collect();
    let m = Matching::from_edges(&g, &pairs).expect("pairs are edges");
    (g, m)
}

/// Is there an internally `M`-conformal path from class-1 vertex `a` to
/// class-2 vertex `b`? A single edge `ab` always counts.
pub fn reach_internally_conformal(
    g: &BipartiteGraph,
    m: &Matching,
    a: Vertex,
    b: Vertex,
) -> Result<bool> {
    for w in [a, b] {
        if !g.contains_vertex(w) {
            return Err(Error::UnknownVertex(w));
        }
    }
    if !g.is_class1(a) || g.is_class1(b) {
        return Err(Error::InvalidParameter(format!(
            "expected a class-1 start and a class-2 end, got {a} and {b}"
        )));
    }
    let md = m_direction(g, m)?;
    let seen = md.digraph.reachable_from(md.node_of[a], &[]);
    Ok(seen[md.node_of[b]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::perfect_matching;

    #[test]
    fn c4_gives_two_cycle() {
        let g = BipartiteGraph::complete(2, 2);
        let m = perfect_matching(&g).unwrap();
        let md = m_direction(&g, &m).unwrap();
        assert_eq!(md.digraph.arcs(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn k33_gives_complete_digraph() {
        let g = BipartiteGraph::complete(3, 3);
        let m = perfect_matching(&g).unwrap();
        let md = m_direction(&g, &m).unwrap();
        assert_eq!(md.digraph.arc_count(), 6);
        assert!(is_strongly_connected(&md.digraph));
    }

    #[test]
    fn path_gives_single_arc() {
        // u=0 - v=2 - w=1 - x=3 with M = {uv, wx}
        let g = BipartiteGraph::new(2, 2, [(0, 2), (1, 2), (1, 3)]).unwrap();
        let m = Matching::from_edges(&g, &[(0, 2), (1, 3)]).unwrap();
        let md = m_direction(&g, &m).unwrap();
        assert_eq!(md.digraph.arcs(), vec![(1, 0)]);
        assert!(!reach_internally_conformal(&g, &m, 0, 3).unwrap());
        assert!(reach_internally_conformal(&g, &m, 1, 2).unwrap());
    }

    #[test]
    fn single_arc_components_are_topological() {
        let d = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(!is_strongly_connected(&d));
        assert_eq!(strong_components(&d), vec![vec![0], vec![1]]);
        let d = Digraph::new(2, [(1, 0)]).unwrap();
        assert_eq!(strong_components(&d), vec![vec![1], vec![0]]);
    }

    #[test]
    fn directed_triangle_round_trip() {
        let d = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(is_strongly_connected(&d));
        let (g, m) = from_digraph(&d);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert!(g.degree_sequence().iter().all(|&k| k == 2));
        assert_eq!(m_direction(&g, &m).unwrap().digraph, d);
    }

    #[test]
    fn single_node_is_k2() {
        let d = Digraph::new(1, []).unwrap();
        let (g, m) = from_digraph(&d);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert!(m.is_perfect());
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Digraph::new(2, [(0, 0)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn disjoint_c4s_are_unreachable() {
        let g = BipartiteGraph::new(4, 4, [(0, 4), (0, 5), (1, 4), (1, 5), (2, 6), (2, 7), (3, 6), (3, 7)])
            .unwrap();
        let m = perfect_matching(&g).unwrap();
        assert!(!reach_internally_conformal(&g, &m, 0, 6).unwrap());
        assert!(reach_internally_conformal(&g, &m, 0, 5).unwrap());
    }
}
