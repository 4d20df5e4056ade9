//! K3,3 matching-minor recognition.
//!
//! A brace is K3,3-free exactly when it is the Heawood graph or is built
//! from planar braces by 4-cycle sums of three or more summands. The
//! recognizer peels such sums off at 2+2 vertex sets whose removal leaves
//! at least three components. Sets leaving only two components are not
//! used: giving both sides the full 4-cycle can create a K3,3 that the
//! original graph does not contain (a single edge hanging off the set
//! becomes K3,3 once the cycle is added).

use serde::{Deserialize, Serialize};

use crate::braces::{brace_decomposition, is_brace_by_tight_cuts, Piece};
use crate::error::{Error, Result};
use crate::generators::{generate, NamedGraph};
use crate::graph::{BipartiteGraph, Subgraph, Vertex};
use crate::iso::is_isomorphic;
use crate::planarity::is_planar;

/// Fewest components of `B - S` for `S` to count as splitting.
pub const DEFAULT_MIN_COMPONENTS: usize = 3;

/// Two class-1 vertices `a` and two class-2 vertices `b` whose removal
/// leaves at least three components, listed here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingSet {
    pub a: [Vertex; 2],
    pub b: [Vertex; 2],
    pub components: Vec<Vec<Vertex>>,
}

impl SplittingSet {
    /// The 4-cycle `a1 b1 a2 b2` every summand receives.
    pub fn cycle(&self) -> [Vertex; 4] {
        [self.a[0], self.b[0], self.a[1], self.b[1]]
    }

    /// One summand per component: the component together with `S`, plus
    /// all four edges of the cycle on `S`. Vertex order inside each class
    /// follows the parent graph.
    pub fn summands(&self, g: &BipartiteGraph) -> Vec<Subgraph> {
        let s = self.cycle();
        self.components
            .iter()
            .map(|comp| {
                let mut keep = comp.clone();
                keep.extend(s);
                let sub = g.induced(&keep);
                let id = |v: Vertex| sub.index_of(v).expect("S is kept");
                let h = &sub.graph;
                let cycle_edges = (0..4).map(|i| (id(s[i]), id(s[(i + 1) % 4])));
                let graph = BipartiteGraph::new_merged(h.n1(), h.n2(), h.edges().iter().copied().chain(cycle_edges))
                    .expect("cycle edges join the classes");
                Subgraph {
                    graph,
                    origin: sub.origin,
                }
            })
            .collect()
    }
}

pub fn is_heawood(g: &BipartiteGraph) -> bool {
    g.vertex_count() == 14
        && g.edge_count() == 21
        && is_isomorphic(g, &generate(NamedGraph::Heawood).expect("fixed generator"))
}

/// The lexicographically first splitting set of a brace, with
/// `B - S` split into at least three components.
pub fn find_splitting_set(g: &BipartiteGraph) -> Result<Option<SplittingSet>> {
    if !is_brace_by_tight_cuts(g) {
        return Err(Error::NotBrace);
    }
    Ok(find_splitting_set_with(g, DEFAULT_MIN_COMPONENTS))
}

/// The lexicographically first `S = {a1 < a2} ∪ {b1 < b2}` such that
/// `B - S` has at least `min_components` components. Does not check that
/// `g` is a brace.
///
/// For each triple `a1, a2, b1` one depth-first search of the remaining
/// graph tells, for every candidate `b2`, how many components its removal
/// leaves.
pub fn find_splitting_set_with(g: &BipartiteGraph, min_components: usize) -> Option<SplittingSet> {
    let need = min_components.max(2);
    let class1: Vec<Vertex> = g.class1().collect();
    let mut cuts = CutCounter::new(g);
    for (i, &a1) in class1.iter().enumerate() {
        for &a2 in &class1[i + 1..] {
            for b1 in g.class2() {
                for v in [a1, a2, b1] {
                    cuts.alive[v] = false;
                }
                let base = cuts.run(g);
                let hit = g.class2().filter(|&v| v > b1).find(|&v| base - 1 + cuts.pieces[v] >= need);
                if let Some(b2) = hit {
                    cuts.alive[b2] = false;
                    let alive = &cuts.alive;
                    let components = g.components_where(|v| alive[v]);
                    return Some(SplittingSet {
                        a: [a1, a2],
                        b: [b1, b2],
                        components,
                    });
                }
                for v in [a1, a2, b1] {
                    cuts.alive[v] = true;
                }
            }
        }
    }
    None
}

/// Reusable Tarjan state: after [`CutCounter::run`], `pieces[v]` is the
/// number of components the component of `v` falls into when `v` is
/// removed from the subgraph induced by `alive`.
struct CutCounter {
    alive: Vec<bool>,
    disc: Vec<usize>,
    low: Vec<usize>,
    pieces: Vec<usize>,
    time: usize,
}

impl CutCounter {
    fn new(g: &BipartiteGraph) -> Self {
        let n = g.vertex_count();
        CutCounter {
            alive: vec![true; n],
            disc: vec![0; n],
            low: vec![0; n],
            pieces: vec![0; n],
            time: 0,
        }
    }

    /// Returns the number of components of the alive subgraph.
    fn run(&mut self, g: &BipartiteGraph) -> usize {
        self.disc.fill(0);
        self.time = 0;
        let mut components = 0;
        for r in g.vertices() {
            if self.alive[r] && self.disc[r] == 0 {
                components += 1;
                self.dfs(g, r, None);
            }
        }
        components
    }

    fn dfs(&mut self, g: &BipartiteGraph, u: Vertex, parent: Option<Vertex>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        let mut children = 0;
        let mut separated = 0;
        for &w in g.neighbors(u) {
            if !self.alive[w] || Some(w) == parent {
                continue;
            }
            if self.disc[w] == 0 {
                children += 1;
                self.dfs(g, w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    separated += 1;
                }
            } else {
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
        self.pieces[u] = if parent.is_none() { children } else { separated + 1 };
    }
}

/// Does the brace `g` contain K3,3 as a matching minor?
pub fn brace_contains_k33(g: &BipartiteGraph) -> Result<bool> {
    if !is_brace_by_tight_cuts(g) {
        return Err(Error::NotBrace);
    }
    brace_contains_k33_unchecked(g)
}

/// [`brace_contains_k33`] without the brace check on the input. Summands met
/// during the recursion are still checked.
pub fn brace_contains_k33_unchecked(g: &BipartiteGraph) -> Result<bool> {
    brace_contains_k33_with(g, DEFAULT_MIN_COMPONENTS)
}

/// The recognizer with a configurable splitting threshold.
pub fn brace_contains_k33_with(g: &BipartiteGraph, min_components: usize) -> Result<bool> {
    if g.vertex_count() < 6 || is_planar(g).planar || is_heawood(g) {
        return Ok(false);
    }
    let Some(split) = find_splitting_set_with(g, min_components) else {
        return Ok(true);
    };
    let summands = split.summands(g);
    if summands.iter().any(|s| !is_brace_by_tight_cuts(&s.graph)) {
        let t10 = generate(NamedGraph::T10).expect("fixed generator");
        if is_isomorphic(g, &t10) {
            // T10 is a 4-cycle sum of three K3,3 and contains K3,3.
            return Ok(true);
        }
        return Err(Error::StructuralAnomaly(format!(
            "a summand at S = {:?} is not a brace",
            split.cycle()
        )));
    }
    // Small summands are cheap and often decide the answer.
    let mut order: Vec<&Subgraph> = summands.iter().collect();
    order.sort_by_key(|s| s.graph.vertex_count());
    for s in order {
        if brace_contains_k33_with(&s.graph, min_components)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Braces of `g` with their verdicts.
pub fn brace_verdicts(g: &BipartiteGraph) -> Result<Vec<(Piece, bool)>> {
    brace_decomposition(g)?
        .into_iter()
        .map(|p| {
            let verdict = brace_contains_k33_unchecked(&p.graph)?;
            Ok((p, verdict))
        })
        .collect()
}

/// Does the matching covered graph `g` contain K3,3 as a matching minor?
pub fn contains_k33(g: &BipartiteGraph) -> Result<bool> {
    for piece in brace_decomposition(g)? {
        if brace_contains_k33_unchecked(&piece.graph)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: NamedGraph) -> BipartiteGraph {
        generate(n).unwrap()
    }

    #[test]
    fn heawood_recognition() {
        let h = named(NamedGraph::Heawood);
        assert!(is_heawood(&h));
        let perm: Vec<Vertex> = (0..7).rev().chain((7..14).rev()).collect();
        assert!(is_heawood(&h.relabel(&perm, false).unwrap()));
        assert!(is_heawood(&h.swap_classes()));
        assert!(!is_heawood(&named(NamedGraph::Cube)));
    }

    #[test]
    fn splitting_sets() {
        let r = named(NamedGraph::Rotunda);
        let s = find_splitting_set(&r).unwrap().unwrap();
        assert_eq!(s.components.len(), 3);
        assert!(s.components.iter().all(|c| c.len() == 4));
        assert_eq!(find_splitting_set(&named(NamedGraph::K33)).unwrap(), None);
        for sub in s.summands(&r) {
            assert!(is_isomorphic(&sub.graph, &named(NamedGraph::Cube)));
        }
    }

    #[test]
    fn fixtures() {
        assert!(brace_contains_k33(&named(NamedGraph::K33)).unwrap());
        assert!(!brace_contains_k33(&named(NamedGraph::Heawood)).unwrap());
        assert!(!brace_contains_k33(&named(NamedGraph::Rotunda)).unwrap());
        assert!(!brace_contains_k33(&named(NamedGraph::Cube)).unwrap());
        assert!(brace_contains_k33(&named(NamedGraph::MoebiusLadder(2))).unwrap());
    }

    #[test]
    fn whole_graphs() {
        let c6 = BipartiteGraph::new(3, 3, [(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)]).unwrap();
        assert!(!contains_k33(&c6).unwrap());
        assert!(!contains_k33(&named(NamedGraph::Cube)).unwrap());
        // K3,3 with the edge 0-3 replaced by a path of length three.
        let mut edges: Vec<(Vertex, Vertex)> = BipartiteGraph::complete(3, 3)
            .edges()
            .iter()
            .filter(|&&e| e != (0, 3))
            .map(|&(u, v)| (u, v + 1))
            .collect();
        // New vertices: 3 in class 1 and 7 in class 2.
        edges.extend([(0, 7), (3, 7), (3, 4)]);
        let g = BipartiteGraph::new(4, 4, edges).unwrap();
        assert!(contains_k33(&g).unwrap());
    }

    #[test]
    fn rejects_non_braces() {
        let c6 = BipartiteGraph::new(3, 3, [(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)]).unwrap();
        assert_eq!(brace_contains_k33(&c6), Err(Error::NotBrace));
        assert_eq!(find_splitting_set(&c6), Err(Error::NotBrace));
    }
}
