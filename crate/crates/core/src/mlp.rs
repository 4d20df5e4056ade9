//! Polynomial decision procedure for the two-pair matching linkage problem
//! (2-MLP): is there a perfect matching `M` and two disjoint internally
//! `M`-conformal paths joining `a1` to `b1` and `a2` to `b2`?
//!
//! Each extendible cover of the terminals is handled on its own. Covers
//! using `a1b1` or `a2b2` reduce to a direct answer or to reachability in the
//! M-direction. All other covers are shrunk to `{a1b2, a2b1}`, a six-vertex
//! gadget is attached, and the answer becomes whether the brace holding the
//! gadget contains K3,3.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::braces::brace_decomposition;
use crate::conformal::admissible_edges_with;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge, Vertex};
use crate::k33::brace_contains_k33_unchecked;
use crate::matching::{has_perfect_matching_without, perfect_matching, perfect_matching_extending};
use crate::mdirection::reach_internally_conformal;

/// A 2-MLP instance: `a1, a2` in class 1, `b1, b2` in class 2, all distinct,
/// and the graph has a perfect matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlpProblem {
    pub graph: BipartiteGraph,
    pub a1: Vertex,
    pub a2: Vertex,
    pub b1: Vertex,
    pub b2: Vertex,
}

impl MlpProblem {
    pub fn new(graph: BipartiteGraph, a1: Vertex, a2: Vertex, b1: Vertex, b2: Vertex) -> Result<Self> {
        for v in [a1, a2, b1, b2] {
            if !graph.contains_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        if !graph.is_class1(a1) || !graph.is_class1(a2) {
            return Err(Error::InvalidProblem("a1 and a2 must lie in class 1".into()));
        }
        if graph.is_class1(b1) || graph.is_class1(b2) {
            return Err(Error::InvalidProblem("b1 and b2 must lie in class 2".into()));
        }
        if a1 == a2 || b1 == b2 {
            return Err(Error::InvalidProblem("terminals must be distinct".into()));
        }
        if perfect_matching(&graph).is_none() {
            return Err(Error::InvalidProblem("the graph has no perfect matching".into()));
        }
        Ok(MlpProblem { graph, a1, a2, b1, b2 })
    }

    /// `[a1, a2, b1, b2]`.
    pub fn terminals(&self) -> [Vertex; 4] {
        [self.a1, self.a2, self.b1, self.b2]
    }

    fn is_terminal(&self, v: Vertex) -> bool {
        self.terminals().contains(&v)
    }

    fn with_graph(&self, graph: BipartiteGraph, map: impl Fn(Vertex) -> Vertex) -> MlpProblem {
        MlpProblem {
            graph,
            a1: map(self.a1),
            a2: map(self.a2),
            b1: map(self.b1),
            b2: map(self.b2),
        }
    }
}

/// A matching of two to four edges covering every terminal exactly once,
/// each edge holding a terminal. Edges are sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cover {
    pub edges: Vec<Edge>,
}

impl Cover {
    pub fn new(mut edges: Vec<Edge>) -> Cover {
        edges.sort_unstable();
        edges.dedup();
        Cover { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The other end of the cover edge at `v`.
    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.edges.iter().find_map(|&(u, w)| {
            if u == v {
                Some(w)
            } else if w == v {
                Some(u)
            } else {
                None
            }
        })
    }

    fn vertices(&self) -> Vec<Vertex> {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }
}

/// Checks that `cover` is an extendible cover of the terminals.
pub fn validate_cover(problem: &MlpProblem, cover: &Cover) -> Result<()> {
    let g = &problem.graph;
    let mut used = vec![false; g.vertex_count()];
    for &(u, v) in &cover.edges {
        if !g.contains_vertex(u) || !g.contains_vertex(v) || g.normalise(u, v) != Some((u, v)) {
            return Err(Error::InvalidCover(format!("{u}-{v} is not a normalised edge")));
        }
        if !g.has_edge(u, v) {
            return Err(Error::MissingEdge((u, v)));
        }
        if !problem.is_terminal(u) && !problem.is_terminal(v) {
            return Err(Error::InvalidCover(format!("edge {u}-{v} holds no terminal")));
        }
        for w in [u, v] {
            if used[w] {
                return Err(Error::NotAMatching(w));
            }
            used[w] = true;
        }
    }
    if let Some(t) = problem.terminals().into_iter().find(|&t| !used[t]) {
        return Err(Error::InvalidCover(format!("terminal {t} is not covered")));
    }
    if !has_perfect_matching_without(g, &cover.vertices()) {
        return Err(Error::InvalidCover("the cover does not extend to a perfect matching".into()));
    }
    Ok(())
}

/// All extendible covers of the terminals, sorted. A cover picks one edge at
/// each terminal; choices that collide or do not extend are dropped.
pub fn enumerate_covers(problem: &MlpProblem) -> Vec<Cover> {
    let g = &problem.graph;
    let mut found = BTreeSet::new();
    let mut chosen: Vec<Edge> = Vec::with_capacity(4);
    let mut used = vec![false; g.vertex_count()];
    let terminals = problem.terminals();
    pick_cover_edges(g, &terminals, &mut chosen, &mut used, &mut found);
    found
        .into_iter()
        .filter(|c: &Cover| has_perfect_matching_without(g, &c.vertices()))
        .collect()
}

fn pick_cover_edges(
    g: &BipartiteGraph,
    rest: &[Vertex],
    chosen: &mut Vec<Edge>,
    used: &mut [bool],
    found: &mut BTreeSet<Cover>,
) {
    let Some((&t, rest)) = rest.split_first() else {
        found.insert(Cover::new(chosen.clone()));
        return;
    };
    if used[t] {
        // Already covered by an edge joining two terminals.
        pick_cover_edges(g, rest, chosen, used, found);
        return;
    }
    for &w in g.neighbors(t) {
        if used[w] {
            continue;
        }
        used[t] = true;
        used[w] = true;
        chosen.push(g.normalise(t, w).expect("neighbours are adjacent"));
        pick_cover_edges(g, rest, chosen, used, found);
        chosen.pop();
        used[t] = false;
        used[w] = false;
    }
}

/// The result of one reduction step: the smaller instance, its cover, and
/// for every new vertex the vertex of the input graph it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduced {
    pub problem: MlpProblem,
    pub cover: Cover,
    pub origin: Vec<Vertex>,
}

/// `B - u - v + pq`, with the terminals and the cover renamed.
fn delete_and_join(
    problem: &MlpProblem,
    cover: &Cover,
    u: Vertex,
    v: Vertex,
    (p, q): Edge,
) -> Reduced {
    let sub = problem.graph.remove_vertices(&[u, v]);
    let id = |w: Vertex| sub.index_of(w).expect("kept vertex");
    let g = &sub.graph;
    let edges = g.edges().iter().copied().chain([(id(p), id(q))]);
    let graph = BipartiteGraph::new_merged(g.n1(), g.n2(), edges).expect("added edge joins the classes");
    let edges = cover
        .edges
        .iter()
        .filter(|&&(s, t)| s != u && s != v && t != u && t != v)
        .map(|&(s, t)| (id(s), id(t)))
        .chain([(id(p), id(q))])
        .collect();
    Reduced {
        problem: problem.with_graph(graph, id),
        cover: Cover::new(edges),
        origin: sub.origin,
    }
}

fn ensure_no_direct_edge(problem: &MlpProblem, cover: &Cover) -> Result<()> {
    let (a1b1, a2b2) = ((problem.a1, problem.b1), (problem.a2, problem.b2));
    if cover.contains(a1b1) || cover.contains(a2b2) {
        return Err(Error::InvalidCover("the cover uses a1b1 or a2b2".into()));
    }
    Ok(())
}

/// Replaces the cover edges `u a2` and `v b1` by the single edge `a2 b1`,
/// deleting `u` and `v`. Accepts covers of size four, and covers of size
/// three containing `a1 b2` (where the same construction applies).
pub fn transform_4_to_3(problem: &MlpProblem, cover: &Cover) -> Result<Reduced> {
    validate_cover(problem, cover)?;
    ensure_no_direct_edge(problem, cover)?;
    let shaped = cover.len() == 4 || (cover.len() == 3 && cover.contains((problem.a1, problem.b2)));
    if !shaped {
        return Err(Error::InvalidCover(
            "expected four edges, or three edges including a1b2".into(),
        ));
    }
    let u = cover.partner(problem.a2).expect("validated");
    let v = cover.partner(problem.b1).expect("validated");
    Ok(delete_and_join(problem, cover, u, v, (problem.a2, problem.b1)))
}

/// Replaces the cover edges `u a1` and `v b2` by the single edge `a1 b2`,
/// deleting `u` and `v`. Covers of size four first go through
/// [`transform_4_to_3`]; the origin map then refers to the input graph.
pub fn transform_3_to_2(problem: &MlpProblem, cover: &Cover) -> Result<Reduced> {
    validate_cover(problem, cover)?;
    ensure_no_direct_edge(problem, cover)?;
    if cover.len() == 4 {
        let first = transform_4_to_3(problem, cover)?;
        let second = transform_3_to_2(&first.problem, &first.cover)?;
        let origin = second.origin.iter().map(|&w| first.origin[w]).collect();
        return Ok(Reduced { origin, ..second });
    }
    if cover.len() != 3 || !cover.contains((problem.a2, problem.b1)) {
        return Err(Error::InvalidCover("expected three edges including a2b1".into()));
    }
    let u = cover.partner(problem.a1).expect("validated");
    let v = cover.partner(problem.b2).expect("validated");
    Ok(delete_and_join(problem, cover, u, v, (problem.a1, problem.b2)))
}

/// Brings a cover avoiding `a1b1` and `a2b2` down to `{a1b2, a2b1}`.
pub fn reduce_to_pair(problem: &MlpProblem, cover: &Cover) -> Result<Reduced> {
    validate_cover(problem, cover)?;
    ensure_no_direct_edge(problem, cover)?;
    let identity = || problem.graph.vertices().collect::<Vec<_>>();
    match cover.len() {
        2 => Ok(Reduced {
            problem: problem.clone(),
            cover: cover.clone(),
            origin: identity(),
        }),
        3 if cover.contains((problem.a1, problem.b2)) => transform_4_to_3(problem, cover),
        _ => transform_3_to_2(problem, cover),
    }
}

/// The gadget instance: two fresh vertices `x` (class 1, adjacent to `y`,
/// `b1`, `b2`) and `y` (class 2, adjacent to `x`, `a1`, `a2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetInstance {
    pub graph: BipartiteGraph,
    pub a1: Vertex,
    pub a2: Vertex,
    pub b1: Vertex,
    pub b2: Vertex,
    pub x: Vertex,
    pub y: Vertex,
    /// The 4-cycle `(a1, y, x, b2)`.
    pub cycle: [Vertex; 4],
    /// `a1b2, a2b1, xy, xb1, xb2, ya1, ya2`, normalised.
    pub h_edges: [Edge; 7],
    /// Vertex of the input graph behind each gadget-instance vertex; `None`
    /// for `x` and `y`.
    pub origin: Vec<Option<Vertex>>,
}

impl GadgetInstance {
    pub fn h_vertices(&self) -> [Vertex; 6] {
        [self.a1, self.a2, self.b1, self.b2, self.x, self.y]
    }
}

/// Builds the gadget instance. Larger covers are reduced first; covers
/// using `a1b1` or `a2b2` are rejected.
pub fn build_final_instance(problem: &MlpProblem, cover: &Cover) -> Result<GadgetInstance> {
    let reduced = reduce_to_pair(problem, cover)?;
    let p = &reduced.problem;
    let g = &p.graph;
    let (n1, n2) = (g.n1(), g.n2());
    let x = n1;
    let y = n1 + 1 + n2;
    let id = |w: Vertex| if w < n1 { w } else { w + 1 };
    let (a1, a2, b1, b2) = (id(p.a1), id(p.a2), id(p.b1), id(p.b2));
    let h_edges = [(a1, b2), (a2, b1), (x, y), (x, b1), (x, b2), (a1, y), (a2, y)];
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (id(u), id(v)))
        .chain(h_edges[2..].iter().copied());
    let graph = BipartiteGraph::new(n1 + 1, n2 + 1, edges)?;
    let mut origin: Vec<Option<Vertex>> = vec![None; graph.vertex_count()];
    for w in g.vertices() {
        origin[id(w)] = Some(reduced.origin[w]);
    }
    Ok(GadgetInstance {
        graph,
        a1,
        a2,
        b1,
        b2,
        x,
        y,
        cycle: [a1, y, x, b2],
        h_edges,
        origin,
    })
}

/// How a cover was decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// The cover holds both `a1b1` and `a2b2`.
    BothDirect,
    /// The cover holds exactly one of them; the other pair was tested for
    /// internally conformal reachability.
    Reachability,
    /// An edge of the gadget lies in no perfect matching of the instance.
    Inadmissible(Edge),
    /// The gadget sits in a brace of this many vertices, which was tested
    /// for K3,3.
    Brace { vertices: usize },
    /// No brace of the decomposition holds the six gadget vertices apart.
    NoBrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverTrace {
    pub cover: Cover,
    pub branch: Branch,
    pub holds: bool,
}

/// Decides whether some perfect matching containing `cover` admits the two
/// paths.
pub fn solve_cover(problem: &MlpProblem, cover: &Cover) -> Result<bool> {
    Ok(solve_cover_traced(problem, cover)?.holds)
}

pub fn solve_cover_traced(problem: &MlpProblem, cover: &Cover) -> Result<CoverTrace> {
    validate_cover(problem, cover)?;
    let trace = |branch, holds| CoverTrace {
        cover: cover.clone(),
        branch,
        holds,
    };
    let first = cover.contains((problem.a1, problem.b1));
    let second = cover.contains((problem.a2, problem.b2));
    if first && second {
        return Ok(trace(Branch::BothDirect, true));
    }
    if first || second {
        // Fix the direct pair and look for the other path in what remains.
        let (s, t, a, b) = if first {
            (problem.a1, problem.b1, problem.a2, problem.b2)
        } else {
            (problem.a2, problem.b2, problem.a1, problem.b1)
        };
        let m = perfect_matching_extending(&problem.graph, &cover.edges).expect("validated");
        let sub = problem.graph.remove_vertices(&[s, t]);
        let id = |w: Vertex| sub.index_of(w).expect("kept vertex");
        let pairs: Vec<Edge> = m
            .edges(&problem.graph)
            .into_iter()
            .filter(|&(u, _)| u != s)
            .map(|(u, v)| (id(u), id(v)))
            .collect();
        let rest = crate::matching::Matching::from_edges(&sub.graph, &pairs)?;
        let holds = reach_internally_conformal(&sub.graph, &rest, id(a), id(b))?;
        return Ok(trace(Branch::Reachability, holds));
    }
    let inst = build_final_instance(problem, cover)?;
    let (branch, holds) = decide_gadget(&inst)?;
    Ok(trace(branch, holds))
}

/// Restricts the gadget instance to the admissible edges of the elementary
/// component holding the gadget and tests the brace that keeps its six
/// vertices apart.
fn decide_gadget(inst: &GadgetInstance) -> Result<(Branch, bool)> {
    let g = &inst.graph;
    let m = perfect_matching(g).ok_or(Error::NoPerfectMatching)?;
    let admissible = admissible_edges_with(g, &m);
    if let Some(&e) = inst.h_edges.iter().find(|e| admissible.binary_search(e).is_err()) {
        return Ok((Branch::Inadmissible(e), false));
    }
    let elementary = g.spanning_subgraph(admissible);
    let component = elementary
        .components()
        .into_iter()
        .find(|c| c.contains(&inst.a1))
        .expect("every vertex lies in a component");
    let sub = elementary.induced(&component);
    let h: Vec<Vertex> = inst
        .h_vertices()
        .iter()
        .map(|&v| sub.index_of(v).expect("the gadget is connected"))
        .collect();
    let pieces = brace_decomposition(&sub.graph)?;
    let mut located = None;
    for piece in &pieces {
        let nodes: Option<BTreeSet<Vertex>> = h.iter().map(|&v| piece.node_of(v)).collect();
        if nodes.is_some_and(|n| n.len() == h.len()) {
            let holds = brace_contains_k33_unchecked(&piece.graph)?;
            let branch = Branch::Brace {
                vertices: piece.graph.vertex_count(),
            };
            if holds {
                return Ok((branch, true));
            }
            located.get_or_insert(branch);
        }
    }
    Ok((located.unwrap_or(Branch::NoBrace), false))
}

/// Decides 2-MLP by trying every extendible cover. Covers holding `a1b1`
/// or `a2b2` are cheap and go first; the verdict does not depend on the
/// order.
pub fn solve_2mlp(problem: &MlpProblem) -> Result<bool> {
    let direct = |c: &Cover| c.contains((problem.a1, problem.b1)) || c.contains((problem.a2, problem.b2));
    let (cheap, rest): (Vec<Cover>, Vec<Cover>) = enumerate_covers(problem).into_iter().partition(direct);
    for cover in cheap.iter().chain(&rest) {
        if solve_cover(problem, cover)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Like [`solve_2mlp`] but decides every cover and returns all traces.
pub fn solve_2mlp_traced(problem: &MlpProblem) -> Result<(bool, Vec<CoverTrace>)> {
    let traces = enumerate_covers(problem)
        .iter()
        .map(|c| solve_cover_traced(problem, c))
        .collect::<Result<Vec<_>>>()?;
    Ok((traces.iter().any(|t| t.holds), traces))
}
