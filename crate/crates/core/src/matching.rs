//! Matchings and Hopcroft-Karp maximum matching.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge, Vertex};

const NONE: usize = usize::MAX;

/// A set of pairwise disjoint edges of some host graph, stored as a mate array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<usize>,
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            vertex_count: usize,
            edges: Vec<Edge>,
        }
        Repr {
            vertex_count: self.mate.len(),
            edges: self.edges_sorted_any(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            vertex_count: usize,
            edges: Vec<Edge>,
        }
        let r = Repr::deserialize(d)?;
        let mut m = Matching::empty(r.vertex_count);
        for (u, v) in r.edges {
            if u >= r.vertex_count || v >= r.vertex_count || u == v {
                return Err(serde::de::Error::custom("matching edge out of range"));
            }
            if m.mate[u] != NONE || m.mate[v] != NONE {
                return Err(serde::de::Error::custom("matching edges are not disjoint"));
            }
            m.mate[u] = v;
            m.mate[v] = u;
        }
        Ok(m)
    }
}

impl Matching {
    pub fn empty(vertex_count: usize) -> Self {
        Matching {
            mate: vec![NONE; vertex_count],
        }
    }

    /// Validates `edges` against `g`: each must exist and no vertex may be covered twice.
    pub fn from_edges(g: &BipartiteGraph, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut m = Matching::empty(g.vertex_count());
        for &(u, v) in edges {
            for w in [u, v] {
                if !g.contains_vertex(w) {
                    return Err(Error::UnknownVertex(w));
                }
            }
            if !g.has_edge(u, v) {
                return Err(Error::MissingEdge(g.normalise(u, v).unwrap_or((u, v))));
            }
            for w in [u, v] {
                if m.mate[w] != NONE {
                    return Err(Error::NotAMatching(w));
                }
            }
            m.mate[u] = v;
            m.mate[v] = u;
        }
        Ok(m)
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        match self.mate[v] {
            NONE => None,
            w => Some(w),
        }
    }

    pub fn is_covered(&self, v: Vertex) -> bool {
        self.mate[v] != NONE
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        u < self.mate.len() && self.mate[u] == v
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|&&w| w != NONE).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|&w| w != NONE)
    }

    /// Edges normalised against `g` and sorted.
    pub fn edges(&self, g: &BipartiteGraph) -> Vec<Edge> {
        g.class1()
            .filter_map(|u| self.mate(u).map(|v| (u, v)))
            .collect()
    }

    fn edges_sorted_any(&self) -> Vec<Edge> {
        (0..self.mate.len())
            .filter(|&u| self.mate[u] != NONE && u < self.mate[u])
            .map(|u| (u, self.mate[u]))
            .collect()
    }

    pub(crate) fn set(&mut self, u: Vertex, v: Vertex) {
        self.mate[u] = v;
        self.mate[v] = u;
    }

    pub(crate) fn unset(&mut self, u: Vertex) {
        let v = self.mate[u];
        if v != NONE {
            self.mate[v] = NONE;
            self.mate[u] = NONE;
        }
    }

    /// Checks that this is a perfect matching of `g`.
    pub fn check_perfect_in(&self, g: &BipartiteGraph) -> Result<()> {
        if self.mate.len() != g.vertex_count() {
            return Err(Error::NotPerfect);
        }
        for u in g.vertices() {
            match self.mate(u) {
                None => return Err(Error::NotPerfect),
                Some(v) => {
                    if self.mate[v] != u {
                        return Err(Error::NotAMatching(v));
                    }
                    if !g.has_edge(u, v) {
                        return Err(Error::MissingEdge(g.normalise(u, v).unwrap_or((u, v))));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Hopcroft-Karp restricted to vertices with `alive[v]`, starting from `seed`
/// (whose edges must join alive vertices). Runs in O(E sqrt V).
pub fn hopcroft_karp(g: &BipartiteGraph, alive: &[bool], seed: Option<&Matching>) -> Matching {
    let n = g.vertex_count();
    let mut m = match seed {
        Some(s) => s.clone(),
        None => Matching::empty(n),
    };
    let left: Vec<Vertex> = g.class1().filter(|&u| alive[u]).collect();
    let mut dist = vec![NONE; n];
    let mut it = vec![0usize; n];
    let mut queue = VecDeque::new();
    loop {
        // Layered BFS from free left vertices over alternating paths.
        queue.clear();
        for &u in &left {
            if m.mate[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !alive[v] {
                    continue;
                }
                let w = m.mate[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for &u in &left {
            it[u] = 0;
        }
        let mut augmented = false;
        for &u in &left {
            if m.mate[u] == NONE && augment(g, alive, &mut m, &dist, &mut it, u) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    m
}

fn augment(
    g: &BipartiteGraph,
    alive: &[bool],
    m: &mut Matching,
    dist: &[usize],
    it: &mut [usize],
    u: Vertex,
) -> bool {
    let nbrs = g.neighbors(u);
    while it[u] < nbrs.len() {
        let v = nbrs[it[u]];
        it[u] += 1;
        if !alive[v] {
            continue;
        }
        let w = m.mate[v];
        if w == NONE || (dist[w] == dist[u] + 1 && augment(g, alive, m, dist, it, w)) {
            m.set(u, v);
            return true;
        }
    }
    false
}

/// A maximum-cardinality matching of `g`.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    hopcroft_karp(g, &vec![true; g.vertex_count()], None)
}

/// A maximum matching obtained by augmenting `seed`. Vertices covered by
/// `seed` stay covered, though possibly by different edges.
pub fn max_matching_from(g: &BipartiteGraph, seed: &Matching) -> Matching {
    hopcroft_karp(g, &vec![true; g.vertex_count()], Some(seed))
}

pub fn perfect_matching(g: &BipartiteGraph) -> Option<Matching> {
    if g.n1() != g.n2() {
        return None;
    }
    let m = max_matching(g);
    m.is_perfect().then_some(m)
}

pub fn has_perfect_matching(g: &BipartiteGraph) -> bool {
    perfect_matching(g).is_some()
}

/// Does `g - removed` have a perfect matching?
pub fn has_perfect_matching_without(g: &BipartiteGraph, removed: &[Vertex]) -> bool {
    let mut alive = vec![true; g.vertex_count()];
    let mut c1 = g.n1();
    let mut c2 = g.n2();
    for &v in removed {
        if alive[v] {
            alive[v] = false;
            if g.is_class1(v) {
                c1 -= 1;
            } else {
                c2 -= 1;
            }
        }
    }
    if c1 != c2 {
        return false;
    }
    hopcroft_karp(g, &alive, None).len() == c1
}

/// A perfect matching of `g` containing every edge of `forced`, if one exists.
/// `forced` must be a matching of `g`.
pub fn perfect_matching_extending(g: &BipartiteGraph, forced: &[Edge]) -> Option<Matching> {
    if g.n1() != g.n2() {
        return None;
    }
    let mut alive = vec![true; g.vertex_count()];
    let mut seed = Matching::empty(g.vertex_count());
    for &(u, v) in forced {
        alive[u] = false;
        alive[v] = false;
        seed.set(u, v);
    }
    let inner = hopcroft_karp(g, &alive, None);
    for u in g.class1().filter(|&u| alive[u]) {
        if let Some(v) = inner.mate(u) {
            seed.set(u, v);
        }
    }
    seed.is_perfect().then_some(seed)
}
