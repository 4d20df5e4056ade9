//! Isomorphism of small bipartite graphs by colour refinement and backtracking.

use std::collections::HashMap;

use crate::graph::{BipartiteGraph, Vertex};

/// Is there an isomorphism from `a` to `b` that maps colour classes onto
/// colour classes, either keeping or exchanging them?
pub fn is_isomorphic(a: &BipartiteGraph, b: &BipartiteGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A bijection `f` with `f[v]` the image of vertex `v` of `a` in `b`.
pub fn find_isomorphism(a: &BipartiteGraph, b: &BipartiteGraph) -> Option<Vec<Vertex>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    if a.degree_sequence() != b.degree_sequence() {
        return None;
    }
    if (a.n1(), a.n2()) == (b.n1(), b.n2()) {
        if let Some(f) = class_preserving(a, b) {
            return Some(f);
        }
    }
    if (a.n1(), a.n2()) == (b.n2(), b.n1()) {
        let swapped = b.swap_classes();
        if let Some(f) = class_preserving(a, &swapped) {
            // Undo the swap: vertex w of `swapped` is vertex w' of `b`.
            let back = |w: Vertex| {
                if w < b.n2() {
                    w + b.n1()
                } else {
                    w - b.n2()
                }
            };
            return Some(f.into_iter().map(back).collect());
        }
    }
    None
}

/// Stable colours from joint refinement of both graphs, starting from class
/// and degree.
fn refine(a: &BipartiteGraph, b: &BipartiteGraph) -> (Vec<usize>, Vec<usize>) {
    let init = |g: &BipartiteGraph| -> Vec<(usize, usize)> {
        g.vertices().map(|v| (usize::from(!g.is_class1(v)), g.degree(v))).collect()
    };
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ca: Vec<usize> = init(a).into_iter().map(|k| intern(&mut table, k)).collect();
    let mut cb: Vec<usize> = init(b).into_iter().map(|k| intern(&mut table, k)).collect();
    let mut classes = table.len();
    loop {
        let mut sig: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let step = |g: &BipartiteGraph, c: &[usize], sig: &mut HashMap<(usize, Vec<usize>), usize>| {
            g.vertices()
                .map(|v| {
                    let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| c[w]).collect();
                    nb.sort_unstable();
                    let key = (c[v], nb);
                    let next = sig.len();
                    *sig.entry(key).or_insert(next)
                })
                .collect::<Vec<usize>>()
        };
        let na = step(a, &ca, &mut sig);
        let nb = step(b, &cb, &mut sig);
        ca = na;
        cb = nb;
        if sig.len() == classes {
            return (ca, cb);
        }
        classes = sig.len();
    }
}

fn intern(table: &mut HashMap<(usize, usize), usize>, k: (usize, usize)) -> usize {
    let next = table.len();
    *table.entry(k).or_insert(next)
}

fn class_preserving(a: &BipartiteGraph, b: &BipartiteGraph) -> Option<Vec<Vertex>> {
    let (ca, cb) = refine(a, b);
    let hist = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if hist(&ca) != hist(&cb) {
        return None;
    }

    // Visit vertices of `a` so that each one (after the first in its
    // component) has an already placed neighbour; start from rare colours.
    let n = a.vertex_count();
    let mut count = HashMap::new();
    for &c in &ca {
        *count.entry(c).or_insert(0usize) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (count[&ca[v]], v))
            .expect("unplaced vertex");
        placed[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in a.neighbors(u) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }

    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &ca, &cb, &order, 0, &mut f, &mut used) {
        Some(f)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &BipartiteGraph,
    b: &BipartiteGraph,
    ca: &[usize],
    cb: &[usize],
    order: &[Vertex],
    depth: usize,
    f: &mut [Vertex],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    let mapped: Vec<Vertex> = a.neighbors(v).iter().copied().filter(|&u| f[u] != usize::MAX).collect();
    let candidates: Vec<Vertex> = match mapped.first() {
        Some(&u) => b.neighbors(f[u]).to_vec(),
        None => b.vertices().collect(),
    };
    for w in candidates {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        if !mapped.iter().all(|&u| b.has_edge(w, f[u])) {
            continue;
        }
        // Non-edges must map to non-edges as well.
        let images = b.neighbors(w).iter().filter(|&&x| used[x]).count();
        if images != mapped.len() {
            continue;
        }
        f[v] = w;
        used[w] = true;
        if extend(a, b, ca, cb, order, depth + 1, f, used) {
            return true;
        }
        f[v] = usize::MAX;
        used[w] = false;
    }
    false
}
