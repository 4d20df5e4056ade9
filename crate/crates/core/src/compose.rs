//! Gluing graphs along a common 4-cycle.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Vertex};
use crate::matching::has_perfect_matching_without;

/// One summand of a 4-cycle sum: a graph and a 4-cycle `c0 c1 c2 c3` in it,
/// with `c0`, `c2` in class 1 and `c1`, `c3` in class 2.
#[derive(Debug, Clone)]
pub struct Summand<'a> {
    pub graph: &'a BipartiteGraph,
    pub cycle: [Vertex; 4],
}

/// Glues the summands on their designated cycles, which are identified
/// position by position.
///
/// `keep_edges` lists which cycle edges survive, by index: `0 = c0c1`,
/// `1 = c1c2`, `2 = c2c3`, `3 = c3c0`. All other edges of every summand are
/// kept; coinciding edges are merged.
///
/// In the result the hub vertices come first in each class (`c0, c2` then
/// `c1, c3`), followed by the remaining vertices of each summand in order.
pub fn four_cycle_sum(parts: &[Summand<'_>], keep_edges: &[usize]) -> Result<BipartiteGraph> {
    if parts.len() < 2 {
        return Err(Error::InvalidSum("at least two summands are required".into()));
    }
    if let Some(&i) = keep_edges.iter().find(|&&i| i > 3) {
        return Err(Error::InvalidSum(format!("cycle edge index {i} is not in 0..4")));
    }
    for (p, part) in parts.iter().enumerate() {
        check_cycle(p, part)?;
    }

    let n1 = 2 + parts.iter().map(|p| p.graph.n1() - 2).sum::<usize>();
    let n2 = 2 + parts.iter().map(|p| p.graph.n2() - 2).sum::<usize>();
    let hub = [0, n1, 1, n1 + 1];

    let mut maps: Vec<Vec<Vertex>> = Vec::with_capacity(parts.len());
    let (mut next1, mut next2) = (2, n1 + 2);
    for part in parts {
        let g = part.graph;
        let mut map = vec![usize::MAX; g.vertex_count()];
        for (pos, &c) in part.cycle.iter().enumerate() {
            map[c] = hub[pos];
        }
        for v in g.vertices() {
            if map[v] != usize::MAX {
                continue;
            }
            if g.is_class1(v) {
                map[v] = next1;
                next1 += 1;
            } else {
                map[v] = next2;
                next2 += 1;
            }
        }
        maps.push(map);
    }

    let is_hub_edge = |a: Vertex, b: Vertex| hub.contains(&a) && hub.contains(&b);
    let mut edges = Vec::new();
    for (part, map) in parts.iter().zip(&maps) {
        for &(u, v) in part.graph.edges() {
            let (a, b) = (map[u], map[v]);
            if !is_hub_edge(a, b) {
                edges.push((a, b));
            }
        }
    }
    for &i in keep_edges {
        edges.push((hub[i], hub[(i + 1) % 4]));
    }
    Ok(BipartiteGraph::new_merged(n1, n2, edges)?)
}

/// Every 4-cycle of `g` once, as `[a, b, a', b']` with `a < a'` in class 1
/// and `b < b'` in class 2, sorted.
pub fn four_cycles(g: &BipartiteGraph) -> Vec<[Vertex; 4]> {
    let mut out = Vec::new();
    for a in g.class1() {
        for a2 in a + 1..g.n1() {
            let common: Vec<Vertex> = g
                .neighbors(a)
                .iter()
                .copied()
                .filter(|&b| g.has_edge(a2, b))
                .collect();
            for (i, &b) in common.iter().enumerate() {
                for &b2 in &common[i + 1..] {
                    out.push([a, b, a2, b2]);
                }
            }
        }
    }
    out
}

fn check_cycle(p: usize, part: &Summand<'_>) -> Result<()> {
    let g = part.graph;
    let c = part.cycle;
    if let Some(&v) = c.iter().find(|&&v| !g.contains_vertex(v)) {
        return Err(Error::UnknownVertex(v));
    }
    if !(g.is_class1(c[0]) && g.is_class1(c[2]) && !g.is_class1(c[1]) && !g.is_class1(c[3])) {
        return Err(Error::InvalidSum(format!(
            "summand {p}: cycle vertices must alternate class 1, class 2"
        )));
    }
    if c[0] == c[2] || c[1] == c[3] {
        return Err(Error::InvalidSum(format!("summand {p}: cycle repeats a vertex")));
    }
    for i in 0..4 {
        if !g.has_edge(c[i], c[(i + 1) % 4]) {
            return Err(Error::InvalidSum(format!(
                "summand {p}: {}-{} is not an edge",
                c[i],
                c[(i + 1) % 4]
            )));
        }
    }
    if !has_perfect_matching_without(g, &c) {
        return Err(Error::InvalidSum(format!("summand {p}: cycle is not conformal")));
    }
    Ok(())
}
