//! Fixtures and helpers shared by the integration suites.
#![allow(dead_code)]

use matchlink::braces::is_brace;
use matchlink::compose::{four_cycle_sum, four_cycles, Summand};
use matchlink::corpus::{random_matching_covered, small_graphs};
use matchlink::planarity::is_planar;
use matchlink::{generate, BipartiteGraph, Edge, NamedGraph, Vertex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn named(n: NamedGraph) -> BipartiteGraph {
    generate(n).unwrap()
}

/// The cycle on `2k` vertices; even positions are class 1.
pub fn cycle_graph(k: usize) -> BipartiteGraph {
    let id = |p: usize| if p.is_multiple_of(2) { p / 2 } else { k + p / 2 };
    BipartiteGraph::new(k, k, (0..2 * k).map(|p| (id(p), id((p + 1) % (2 * k))))).unwrap()
}

/// The hexagonal prism: two 6-cycles joined by rungs.
pub fn prism6() -> BipartiteGraph {
    let id = |p: usize, side: usize| if (p + side).is_multiple_of(2) { p } else { 6 + p };
    let mut edges = Vec::new();
    for p in 0..6 {
        let q = (p + 1) % 6;
        edges.extend([(id(p, 0), id(q, 0)), (id(p, 1), id(q, 1)), (id(p, 0), id(p, 1))]);
    }
    BipartiteGraph::new(6, 6, edges).unwrap()
}

/// A facial 4-cycle of the cube.
fn cube_face(cube: &BipartiteGraph) -> [Vertex; 4] {
    let faces = is_planar(cube).faces.unwrap();
    four_cycles(cube)
        .into_iter()
        .find(|c| faces.iter().any(|f| cycle_edges(f) == cycle_edges(c)))
        .unwrap()
}

/// Two cubes glued on a face, keeping the face: a planar brace on 12
/// vertices.
pub fn double_cube() -> BipartiteGraph {
    let cube = named(NamedGraph::Cube);
    let face = cube_face(&cube);
    let part = Summand { graph: &cube, cycle: face };
    four_cycle_sum(&[part.clone(), part], &[0, 1, 2, 3]).unwrap()
}

/// Sums of three planar braces on a common 4-cycle that are braces, with
/// a label each. None contains K3,3.
pub fn trisum_fixtures() -> Vec<(String, BipartiteGraph)> {
    let cube = named(NamedGraph::Cube);
    let prism = prism6();
    let face = cube_face(&cube);
    let rung = four_cycles(&prism)[0];
    let c = Summand { graph: &cube, cycle: face };
    let p = Summand { graph: &prism, cycle: rung };
    let combos: Vec<(&str, Vec<Summand>)> = vec![
        ("cube+cube+cube", vec![c.clone(), c.clone(), c.clone()]),
        ("cube+cube+prism", vec![c.clone(), c.clone(), p.clone()]),
    ];
    let keeps: [&[usize]; 4] = [&[], &[0], &[0, 2], &[0, 1, 2, 3]];
    let mut out = Vec::new();
    for (name, parts) in &combos {
        for keep in keeps {
            let g = four_cycle_sum(parts, keep).unwrap();
            if is_brace(&g) {
                out.push((format!("{name} keep {keep:?}"), g));
            }
        }
    }
    out
}

/// Edges of the closed walk `c`, normalised and sorted.
pub fn cycle_edges(c: &[Vertex]) -> Vec<Edge> {
    let mut e: Vec<Edge> = (0..c.len())
        .map(|i| {
            let (u, v) = (c[i], c[(i + 1) % c.len()]);
            (u.min(v), u.max(v))
        })
        .collect();
    e.sort_unstable();
    e
}

/// Every cycle of `g` once, starting at its smallest vertex.
pub fn all_cycles(g: &BipartiteGraph) -> Vec<Vec<Vertex>> {
    fn rec(g: &BipartiteGraph, s: Vertex, path: &mut Vec<Vertex>, on: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let x = *path.last().unwrap();
        for &y in g.neighbors(x) {
            // Each cycle is seen in two directions; keep one.
            if y == s && path.len() >= 4 && path[1] < path[path.len() - 1] {
                out.push(path.clone());
            }
            if y <= s || on[y] {
                continue;
            }
            on[y] = true;
            path.push(y);
            rec(g, s, path, on, out);
            path.pop();
            on[y] = false;
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.vertex_count()];
    for s in g.vertices() {
        on[s] = true;
        rec(g, s, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// Every graph of the exhaustive corpus with `k` vertices per class,
/// `lo <= k <= hi`.
pub fn exhaustive(lo: usize, hi: usize) -> Vec<BipartiteGraph> {
    (lo..=hi).flat_map(small_graphs).collect()
}

/// Seeded random matching covered graphs with 6 or 7 vertices per class.
pub fn random_corpus(seed: u64, count: usize) -> Vec<BipartiteGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_matching_covered(&mut rng, 6 + i % 2, 2 + i % 3))
        .collect()
}

/// Braces with at most 14 vertices: the exhaustive corpus, seeded random
/// graphs and the named fixtures.
pub fn corpus_braces() -> Vec<BipartiteGraph> {
    let mut out: Vec<BipartiteGraph> = exhaustive(2, 5).into_iter().filter(is_brace).collect();
    out.extend(random_corpus(11, 600).into_iter().filter(is_brace));
    out.extend(
        [
            NamedGraph::K33,
            NamedGraph::Cube,
            NamedGraph::Heawood,
            NamedGraph::MoebiusLadder(2),
            NamedGraph::MoebiusLadder(3),
        ]
        .map(named),
    );
    out.push(prism6());
    out.push(double_cube());
    out
}

/// The permanent of the biadjacency matrix by Ryser's formula.
pub fn permanent(g: &BipartiteGraph) -> u64 {
    let n = g.n1();
    if n != g.n2() {
        return 0;
    }
    let rows: Vec<u32> = g
        .class1()
        .map(|u| g.neighbors(u).iter().map(|&v| 1u32 << (v - n)).sum())
        .collect();
    let mut total: i64 = 0;
    for cols in 1u32..(1 << n) {
        let product: i64 = rows.iter().map(|r| (r & cols).count_ones() as i64).product();
        let sign = if (n - cols.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += sign * product;
    }
    if n == 0 {
        1
    } else {
        total as u64
    }
}

/// Arbitrary bipartite graphs with 1 to `max` vertices in each class.
pub fn arb_graph(max: usize) -> impl proptest::strategy::Strategy<Value = BipartiteGraph> {
    use proptest::prelude::*;
    (1..=max, 1..=max).prop_flat_map(|(n1, n2)| {
        proptest::collection::vec(any::<bool>(), n1 * n2).prop_map(move |bits| {
            let edges = (0..n1 * n2).filter(|&i| bits[i]).map(|i| (i / n2, n1 + i % n2));
            BipartiteGraph::new(n1, n2, edges).unwrap()
        })
    })
}

/// Balanced graphs with a perfect matching, 2 to `max` vertices per class:
/// a random matching covered graph plus a few arbitrary extra edges.
pub fn arb_matchable(max: usize) -> impl proptest::strategy::Strategy<Value = BipartiteGraph> {
    use proptest::prelude::*;
    let extra = proptest::collection::vec(proptest::bool::weighted(0.15), max * max);
    (2..=max, any::<u64>(), 2..=3usize, extra).prop_map(move |(k, seed, layers, extra)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_matching_covered(&mut rng, k, layers);
        let added = (0..k * k).filter(|&i| extra[i]).map(|i| (i / k, k + i % k));
        BipartiteGraph::new_merged(k, k, g.edges().iter().copied().chain(added)).unwrap()
    })
}
