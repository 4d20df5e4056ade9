//! Tight cuts, tight cut contractions and the brace decomposition.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conformal::{is_extendible, is_matching_covered};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Vertex};
use crate::matching::perfect_matching;
use crate::mdirection::{m_direction, strong_components_masked};

/// The shore of an edge cut, sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TightCut {
    pub shore: Vec<Vertex>,
}

impl TightCut {
    /// A cut is trivial when one of its shores is a single vertex.
    pub fn is_trivial(&self, g: &BipartiteGraph) -> bool {
        self.shore.len() <= 1 || self.shore.len() + 1 >= g.vertex_count()
    }
}

/// Structural tightness test: `X` is a proper non-empty subset of odd size
/// whose classes differ by exactly one, and every neighbour of a
/// minority-class vertex of `X` lies in `X`. Every perfect matching then
/// meets the cut exactly once; in a matching covered graph the converse
/// holds too.
pub fn verify_tight_cut(g: &BipartiteGraph, x: &[Vertex]) -> bool {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in x {
        if !g.contains_vertex(v) || inside[v] {
            return false;
        }
        inside[v] = true;
    }
    if x.is_empty() || x.len() >= n || x.len().is_multiple_of(2) {
        return false;
    }
    let ones = x.iter().filter(|&&v| g.is_class1(v)).count();
    let twos = x.len() - ones;
    if ones.abs_diff(twos) != 1 {
        return false;
    }
    let minority_is_class1 = ones < twos;
    x.iter()
        .filter(|&&v| g.is_class1(v) == minority_is_class1)
        .all(|&v| g.neighbors(v).iter().all(|&w| inside[w]))
}

/// Every non-trivial tight cut shore produced by the M-direction search,
/// sorted and without repeats. Empty exactly when `g` is a brace (for a
/// matching covered `g`).
///
/// Fix a perfect matching `M` and its M-direction `D`. For an `M`-edge
/// `e = ab` with `a` in class 1, if `D - e` is not strongly connected, every
/// sink component `U` of `D - e` has all its out-arcs going to `U` or `e`,
/// so the vertices of the `M`-edges in `U` together with `b` form a shore
/// whose class-1 vertices have all their neighbours inside.
pub fn tight_cut_candidates(g: &BipartiteGraph) -> Vec<TightCut> {
    if g.vertex_count() <= 4 {
        return Vec::new();
    }
    let Some(m) = perfect_matching(g) else {
        return Vec::new();
    };
    let md = m_direction(g, &m).expect("perfect matching");
    let d = &md.digraph;
    let n = d.node_count();
    let mut found = BTreeSet::new();
    let mut alive = vec![true; n];
    for e in 0..n {
        alive[e] = false;
        let comps = strong_components_masked(d, &alive);
        if comps.len() > 1 {
            let mut comp_of = vec![usize::MAX; n];
            for (i, c) in comps.iter().enumerate() {
                for &u in c {
                    comp_of[u] = i;
                }
            }
            for (i, c) in comps.iter().enumerate() {
                let sink = c
                    .iter()
                    .all(|&u| d.successors(u).iter().all(|&w| w == e || comp_of[w] == i));
                if !sink {
                    continue;
                }
                let mut shore: Vec<Vertex> = c.iter().flat_map(|&u| [u, m.mate(u).unwrap()]).collect();
                shore.push(m.mate(e).unwrap());
                shore.sort_unstable();
                found.insert(TightCut { shore });
            }
        }
        alive[e] = true;
    }
    found.into_iter().collect()
}

/// The lexicographically smallest non-trivial tight cut shore found by the
/// M-direction search, or `None` when `g` is a brace.
pub fn find_nontrivial_tight_cut(g: &BipartiteGraph) -> Result<Option<TightCut>> {
    if !is_matching_covered(g).unwrap_or(false) {
        return Err(Error::NotMatchingCovered);
    }
    Ok(tight_cut_candidates(g).into_iter().next())
}

/// Brace test through the extendibility characterisation: `C4`, or
/// 2-extendible.
pub fn is_brace(g: &BipartiteGraph) -> bool {
    if g.vertex_count() == 4 {
        return g.n1() == 2 && g.edge_count() == 4;
    }
    is_extendible(g, 2)
}

/// Brace test through tight cuts: matching covered, at least four vertices,
/// and no non-trivial tight cut.
pub fn is_brace_by_tight_cuts(g: &BipartiteGraph) -> bool {
    g.vertex_count() >= 4
        && is_matching_covered(g).unwrap_or(false)
        && tight_cut_candidates(g).is_empty()
}

/// Where a vertex of a decomposition piece comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    /// An untouched vertex of the original graph.
    Original(Vertex),
    /// A contraction vertex standing for this set of original vertices.
    Contracted(Vec<Vertex>),
}

impl Provenance {
    pub fn originals(&self) -> &[Vertex] {
        match self {
            Provenance::Original(v) => std::slice::from_ref(v),
            Provenance::Contracted(set) => set,
        }
    }
}

/// A graph obtained from the original by tight cut contractions; the
/// provenance lists of all pieces of a decomposition partition the
/// original vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub graph: BipartiteGraph,
    pub provenance: Vec<Provenance>,
}

impl Piece {
    pub fn whole(g: &BipartiteGraph) -> Piece {
        Piece {
            graph: g.clone(),
            provenance: g.vertices().map(Provenance::Original).collect(),
        }
    }

    /// The node of this piece that stands for original vertex `v`.
    pub fn node_of(&self, v: Vertex) -> Option<Vertex> {
        self.provenance.iter().position(|p| p.originals().contains(&v))
    }
}

/// Shrinks `set` to one new vertex, appended at the end of the majority
/// class of `set`. Returns the graph and, per new vertex, the old vertex it
/// came from (`None` for the new one).
fn shrink(g: &BipartiteGraph, set: &[Vertex]) -> (BipartiteGraph, Vec<Option<Vertex>>) {
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        inside[v] = true;
    }
    let ones = set.iter().filter(|&&v| g.is_class1(v)).count();
    let new_in_class1 = 2 * ones > set.len();
    let mut origin: Vec<Option<Vertex>> = g.class1().filter(|&v| !inside[v]).map(Some).collect();
    if new_in_class1 {
        origin.push(None);
    }
    let n1 = origin.len();
    origin.extend(g.class2().filter(|&v| !inside[v]).map(Some));
    if !new_in_class1 {
        origin.push(None);
    }
    let n2 = origin.len() - n1;
    let new_vertex = origin.iter().position(Option::is_none).expect("new vertex");
    let mut id = vec![new_vertex; g.vertex_count()];
    for (i, o) in origin.iter().enumerate() {
        if let Some(v) = o {
            id[*v] = i;
        }
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| !(inside[u] && inside[v]))
        .map(|&(u, v)| (id[u], id[v]));
    let graph = BipartiteGraph::new_merged(n1, n2, edges).expect("contraction keeps classes");
    (graph, origin)
}

fn contract_piece(piece: &Piece, set: &[Vertex]) -> Piece {
    let (graph, origin) = shrink(&piece.graph, set);
    let mut merged: Vec<Vertex> = set
        .iter()
        .flat_map(|&v| piece.provenance[v].originals().to_vec())
        .collect();
    merged.sort_unstable();
    let provenance = origin
        .into_iter()
        .map(|o| match o {
            Some(v) => piece.provenance[v].clone(),
            None => Provenance::Contracted(merged.clone()),
        })
        .collect();
    Piece { graph, provenance }
}

/// Splits a piece along a non-trivial tight cut `x`: the first result keeps
/// `x` and shrinks its complement, the second keeps the complement.
pub fn contract_piece_along(piece: &Piece, x: &[Vertex]) -> Result<(Piece, Piece)> {
    let g = &piece.graph;
    let cut = TightCut {
        shore: {
            let mut s = x.to_vec();
            s.sort_unstable();
            s
        },
    };
    if !verify_tight_cut(g, &cut.shore) {
        return Err(Error::InvalidShore("not a tight cut".into()));
    }
    if cut.is_trivial(g) {
        return Err(Error::InvalidShore("the cut is trivial".into()));
    }
    let mut inside = vec![false; g.vertex_count()];
    for &v in &cut.shore {
        inside[v] = true;
    }
    let complement: Vec<Vertex> = g.vertices().filter(|&v| !inside[v]).collect();
    Ok((
        contract_piece(piece, &complement),
        contract_piece(piece, &cut.shore),
    ))
}

/// The two tight cut contractions of `g` along the shore `x`.
pub fn tight_cut_contract(g: &BipartiteGraph, x: &[Vertex]) -> Result<(Piece, Piece)> {
    contract_piece_along(&Piece::whole(g), x)
}

/// Decomposes a matching covered graph into its braces, always splitting
/// along the lexicographically smallest candidate shore.
pub fn brace_decomposition(g: &BipartiteGraph) -> Result<Vec<Piece>> {
    brace_decomposition_with(g, |_| 0)
}

/// Like [`brace_decomposition`], but `choose` picks which candidate shore
/// to split along at every step (it receives the non-empty candidate list).
pub fn brace_decomposition_with(
    g: &BipartiteGraph,
    mut choose: impl FnMut(&[TightCut]) -> usize,
) -> Result<Vec<Piece>> {
    if !is_matching_covered(g).unwrap_or(false) {
        return Err(Error::NotMatchingCovered);
    }
    let mut braces = Vec::new();
    let mut stack = vec![Piece::whole(g)];
    while let Some(piece) = stack.pop() {
        let candidates = tight_cut_candidates(&piece.graph);
        if candidates.is_empty() {
            braces.push(piece);
            continue;
        }
        let pick = choose(&candidates).min(candidates.len() - 1);
        let (a, b) = contract_piece_along(&piece, &candidates[pick].shore)?;
        stack.push(b);
        stack.push(a);
    }
    Ok(braces)
}
