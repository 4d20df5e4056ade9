//! Test corpora: every small balanced bipartite graph up to isomorphism, and
//! seeded random matching covered graphs.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{BipartiteGraph, Vertex};
use crate::matching::has_perfect_matching;

/// Every bipartite graph with `k` vertices in each class and a perfect
/// matching, one per class-preserving isomorphism class, in a fixed order.
/// Practical for `k <= 5`.
pub fn small_graphs(k: usize) -> Vec<BipartiteGraph> {
    assert!(k <= 6, "exhaustive corpus is limited to six vertices per class");
    if k == 0 {
        return Vec::new();
    }
    let full = (1u32 << k) - 1;
    // permuted[p][row]: the row bitmask after permuting columns by p.
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let permuted: Vec<Vec<u32>> = perms
        .iter()
        .map(|p| {
            (0..=full)
                .map(|row| (0..k).filter(|&c| row >> c & 1 == 1).map(|c| 1 << p[c]).sum())
                .collect()
        })
        .collect();
    let mut seen = BTreeSet::new();
    for rows in (1..=full).combinations_with_replacement(k) {
        let canonical = permuted
            .iter()
            .map(|table| {
                let mut key: Vec<u32> = rows.iter().map(|&r| table[r as usize]).collect();
                key.sort_unstable();
                key
            })
            .min()
            .expect("at least one permutation");
        seen.insert(canonical);
    }
    seen.into_iter()
        .map(|rows| {
            let edges = rows
                .iter()
                .enumerate()
                .flat_map(|(u, &r)| (0..k).filter(move |&c| r >> c & 1 == 1).map(move |c| (u, k + c)));
            BipartiteGraph::new(k, k, edges).expect("rows describe a simple graph")
        })
        .filter(has_perfect_matching)
        .collect()
}

/// A connected union of `layers` uniformly random perfect matchings on `k`
/// vertices per class. Every edge lies in one of the matchings, so the
/// result is matching covered. One layer is only connected for `k = 1`.
pub fn random_matching_covered<R: Rng + ?Sized>(rng: &mut R, k: usize, layers: usize) -> BipartiteGraph {
    assert!(k >= 1 && layers >= 1);
    assert!(k == 1 || layers >= 2, "a single perfect matching is disconnected");
    loop {
        let mut edges = Vec::with_capacity(k * layers);
        let mut targets: Vec<Vertex> = (k..2 * k).collect();
        for _ in 0..layers {
            targets.shuffle(rng);
            edges.extend(targets.iter().enumerate().map(|(u, &v)| (u, v)));
        }
        let g = BipartiteGraph::new_merged(k, k, edges).expect("edges join the classes");
        if g.is_connected() {
            return g;
        }
    }
}

/// Random distinct terminals `(a1, a2, b1, b2)`; needs two vertices per class.
pub fn random_terminals<R: Rng + ?Sized>(rng: &mut R, g: &BipartiteGraph) -> [Vertex; 4] {
    let a: Vec<Vertex> = g.class1().collect::<Vec<_>>().choose_multiple(rng, 2).copied().collect();
    let b: Vec<Vertex> = g.class2().collect::<Vec<_>>().choose_multiple(rng, 2).copied().collect();
    [a[0], a[1], b[0], b[1]]
}
