//! Conformality, admissibility, extendibility and alternating-path predicates.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge, Vertex};
use crate::matching::{self, hopcroft_karp, Matching};
use crate::mdirection::{m_direction, strong_components};

/// Does `g - X` have a perfect matching?
pub fn is_conformal_set(g: &BipartiteGraph, x: &[Vertex]) -> Result<bool> {
    if let Some(&v) = x.iter().find(|&&v| !g.contains_vertex(v)) {
        return Err(Error::UnknownVertex(v));
    }
    Ok(matching::has_perfect_matching_without(g, x))
}

/// Edges contained in some perfect matching.
///
/// Computed from one perfect matching `M`: an `M`-edge is admissible, and a
/// non-matching edge is admissible iff it lies on an `M`-alternating cycle,
/// i.e. both ends sit in one strong component of `D(B, M)`.
pub fn admissible_edges(g: &BipartiteGraph) -> Result<Vec<Edge>> {
    let m = matching::perfect_matching(g).ok_or(Error::NoPerfectMatching)?;
    Ok(admissible_edges_with(g, &m))
}

pub(crate) fn admissible_edges_with(g: &BipartiteGraph, m: &Matching) -> Vec<Edge> {
    let md = m_direction(g, m).expect("caller passes a perfect matching");
    let mut comp = vec![0usize; g.n1()];
    for (i, c) in strong_components(&md.digraph).iter().enumerate() {
        for &u in c {
            comp[u] = i;
        }
    }
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| m.contains(u, v) || comp[md.node_of[u]] == comp[md.node_of[v]])
        .collect()
}

/// Connected components of the subgraph formed by the admissible edges.
/// Every vertex belongs to exactly one component.
pub fn elementary_components(g: &BipartiteGraph) -> Result<Vec<Vec<Vertex>>> {
    let adm = admissible_edges(g)?;
    Ok(g.spanning_subgraph(adm).components())
}

/// Connected with every edge admissible.
pub fn is_matching_covered(g: &BipartiteGraph) -> Result<bool> {
    let adm = admissible_edges(g)?;
    Ok(g.is_connected() && adm.len() == g.edge_count())
}

/// Is `g` k-extendible? Checked through the deletion characterisation: the
/// classes are balanced, and removing any `j <= k` vertices from each class
/// leaves a graph with a perfect matching. Connectivity and the
/// `2k + 2` vertex bound are required as well.
pub fn is_extendible(g: &BipartiteGraph, k: usize) -> bool {
    g.is_connected() && g.vertex_count() >= 2 * k + 2 && deletion_condition(g, k)
}

/// Same predicate, decided through Hall surplus: `|N(S)| >= |S| + k` for every
/// non-empty `S` in class 1 with `|S| <= n1 - k`. Exponential in `n1`.
pub fn is_extendible_by_surplus(g: &BipartiteGraph, k: usize) -> bool {
    g.is_connected() && g.vertex_count() >= 2 * k + 2 && surplus_condition(g, k)
}

/// `g - S1 - S2` has a perfect matching for all `|S1| = |S2| <= k`.
pub fn deletion_condition(g: &BipartiteGraph, k: usize) -> bool {
    let Some(m) = matching::perfect_matching(g) else {
        return false;
    };
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    for j in 1..=k.min(g.n1()) {
        for s1 in g.class1().combinations(j) {
            for s2 in g.class2().combinations(j) {
                let mut seed = m.clone();
                for &v in s1.iter().chain(&s2) {
                    alive[v] = false;
                    seed.unset(v);
                }
                let target = g.n1() - j;
                let ok = hopcroft_karp(g, &alive, Some(&seed)).len() == target;
                for &v in s1.iter().chain(&s2) {
                    alive[v] = true;
                }
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Balanced classes and `|N(S)| >= |S| + k` for all non-empty `S ⊆ V1` with
/// `|S| <= |V1| - k`.
pub fn surplus_condition(g: &BipartiteGraph, k: usize) -> bool {
    if g.n1() != g.n2() {
        return false;
    }
    let n1 = g.n1();
    assert!(n1 < 64, "surplus check enumerates subsets of class 1");
    let nbr_masks: Vec<u64> = g
        .class1()
        .map(|u| g.neighbors(u).iter().fold(0u64, |acc, &v| acc | 1 << (v - n1)))
        .collect();
    for set in 1u64..(1u64 << n1) {
        let size = set.count_ones() as usize;
        if size + k > n1 {
            continue;
        }
        let mut nbrs = 0u64;
        let mut rest = set;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            nbrs |= nbr_masks[u];
            rest &= rest - 1;
        }
        if (nbrs.count_ones() as usize) < size + k {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlternatingPathType {
    /// Internally conformal: both end edges outside the matching.
    Type1,
    /// The matching covers the whole path: both end edges matched.
    Type2,
    /// Exactly one end edge matched.
    Type3,
}

/// Classifies a path (given as a vertex sequence with at least two vertices)
/// with respect to a perfect matching. `Ok(None)` means the path is not
/// alternating.
pub fn classify_alternating_path(
    g: &BipartiteGraph,
    m: &Matching,
    path: &[Vertex],
) -> Result<Option<AlternatingPathType>> {
    check_path(g, path)?;
    let in_m: Vec<bool> = path.windows(2).map(|w| m.contains(w[0], w[1])).collect();
    if in_m.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    let (first, last) = (in_m[0], in_m[in_m.len() - 1]);
    Ok(Some(match (first, last) {
        (false, false) => AlternatingPathType::Type1,
        (true, true) => AlternatingPathType::Type2,
        _ => AlternatingPathType::Type3,
    }))
}

pub(crate) fn check_path(g: &BipartiteGraph, path: &[Vertex]) -> Result<()> {
    if path.len() < 2 {
        return Err(Error::NotAPath("a path needs at least two vertices".into()));
    }
    if let Some(&v) = path.iter().find(|&&v| !g.contains_vertex(v)) {
        return Err(Error::UnknownVertex(v));
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in path {
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotAPath(format!("vertex {v} repeats")));
        }
    }
    if let Some(w) = path.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::NotAPath(format!("{}-{} is not an edge", w[0], w[1])));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> BipartiteGraph {
        BipartiteGraph::complete(2, 2)
    }

    fn p4() -> BipartiteGraph {
        // 0 - 2 - 1 - 3
        BipartiteGraph::new(2, 2, [(0, 2), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn conformal_sets_of_c4() {
        assert!(is_conformal_set(&c4(), &[0, 2]).unwrap());
        assert!(!is_conformal_set(&c4(), &[0, 1]).unwrap());
        assert!(is_conformal_set(&c4(), &[]).unwrap());
        assert_eq!(is_conformal_set(&c4(), &[9]), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn admissible_edges_of_small_graphs() {
        assert_eq!(admissible_edges(&c4()).unwrap().len(), 4);
        assert_eq!(admissible_edges(&p4()).unwrap(), vec![(0, 2), (1, 3)]);
        assert_eq!(admissible_edges(&BipartiteGraph::complete(3, 3)).unwrap().len(), 9);
        let odd = BipartiteGraph::new(2, 1, [(0, 2), (1, 2)]).unwrap();
        assert_eq!(admissible_edges(&odd), Err(Error::NoPerfectMatching));
    }

    #[test]
    fn matching_covered_and_components() {
        assert!(is_matching_covered(&c4()).unwrap());
        assert_eq!(elementary_components(&c4()).unwrap().len(), 1);
        assert!(!is_matching_covered(&p4()).unwrap());
        assert_eq!(
            elementary_components(&p4()).unwrap(),
            vec![vec![0, 2], vec![1, 3]]
        );
    }

    #[test]
    fn extendibility_examples() {
        let k33 = BipartiteGraph::complete(3, 3);
        assert!(is_extendible(&k33, 2));
        assert!(is_extendible_by_surplus(&k33, 2));
        assert!(!is_extendible(&c4(), 2));
        assert!(is_extendible(&c4(), 1));
        assert!(!is_extendible(&p4(), 1));
        assert!(!is_extendible_by_surplus(&p4(), 1));
    }

    #[test]
    fn path_types() {
        let g = p4();
        let m = Matching::from_edges(&g, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(
            classify_alternating_path(&g, &m, &[0, 2]).unwrap(),
            Some(AlternatingPathType::Type2)
        );
        assert_eq!(
            classify_alternating_path(&g, &m, &[2, 1]).unwrap(),
            Some(AlternatingPathType::Type1)
        );
        assert_eq!(
            classify_alternating_path(&g, &m, &[0, 2, 1]).unwrap(),
            Some(AlternatingPathType::Type3)
        );
        assert_eq!(
            classify_alternating_path(&g, &m, &[0, 2, 1, 3]).unwrap(),
            Some(AlternatingPathType::Type2)
        );
        assert!(classify_alternating_path(&g, &m, &[0, 3]).is_err());
        assert!(classify_alternating_path(&g, &m, &[0]).is_err());
    }

    #[test]
    fn three_edge_path_with_matched_middle_is_type1() {
        // C6: 0-3-1-4-2-5-0 ; M = {3-1, 4-2, 5-0}
        let g = BipartiteGraph::new(3, 3, [(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)]).unwrap();
        let m = Matching::from_edges(&g, &[(1, 3), (2, 4), (0, 5)]).unwrap();
        assert_eq!(
            classify_alternating_path(&g, &m, &[0, 3, 1, 4]).unwrap(),
            Some(AlternatingPathType::Type1)
        );
        assert_eq!(
            classify_alternating_path(&g, &m, &[0, 3, 1]).unwrap(),
            Some(AlternatingPathType::Type3)
        );
    }
}
