//! Exponential reference implementations used to check the polynomial code.
//!
//! Every entry point refuses inputs beyond a [`SizeGuard`] with
//! [`Error::Capacity`] instead of running for hours.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::conformal::check_path;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge, Vertex};
use crate::matching::{has_perfect_matching_without, Matching};
use crate::mlp::MlpProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeGuard {
    pub max_vertices: usize,
    pub max_matchings: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_vertices: 20,
            max_matchings: 1_000_000,
        }
    }
}

impl SizeGuard {
    pub fn check(&self, g: &BipartiteGraph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::Capacity(format!(
                "{} vertices exceed the oracle limit of {}",
                g.vertex_count(),
                self.max_vertices
            )));
        }
        Ok(())
    }
}

/// Calls `f` on every perfect matching containing `forced`, in a fixed
/// order, until it returns `true`. Returns whether `f` asked to stop.
fn visit_perfect_matchings(
    g: &BipartiteGraph,
    forced: &[Edge],
    guard: &SizeGuard,
    f: &mut dyn FnMut(&Matching) -> bool,
) -> Result<bool> {
    guard.check(g)?;
    if g.n1() != g.n2() {
        return Ok(false);
    }
    let mut m = Matching::empty(g.vertex_count());
    for &(u, v) in forced {
        if !g.has_edge(u, v) {
            return Err(Error::MissingEdge((u, v)));
        }
        if m.is_covered(u) || m.is_covered(v) {
            return Ok(false);
        }
        m.set(u, v);
    }
    let mut count = 0usize;
    rec_pm(g, &mut m, 0, guard, &mut count, f)
}

fn rec_pm(
    g: &BipartiteGraph,
    m: &mut Matching,
    from: Vertex,
    guard: &SizeGuard,
    count: &mut usize,
    f: &mut dyn FnMut(&Matching) -> bool,
) -> Result<bool> {
    let Some(u) = (from..g.n1()).find(|&u| !m.is_covered(u)) else {
        *count += 1;
        if *count > guard.max_matchings {
            return Err(Error::Capacity(format!(
                "more than {} perfect matchings",
                guard.max_matchings
            )));
        }
        return Ok(f(m));
    };
    for &v in g.neighbors(u) {
        if m.is_covered(v) {
            continue;
        }
        m.set(u, v);
        let stop = rec_pm(g, m, u + 1, guard, count, f)?;
        m.unset(u);
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All perfect matchings, each once, ordered lexicographically by the
/// partner of class-1 vertex 0, then 1, and so on.
pub fn enumerate_perfect_matchings(g: &BipartiteGraph, guard: &SizeGuard) -> Result<Vec<Matching>> {
    enumerate_perfect_matchings_containing(g, &[], guard)
}

pub fn enumerate_perfect_matchings_containing(
    g: &BipartiteGraph,
    forced: &[Edge],
    guard: &SizeGuard,
) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    visit_perfect_matchings(g, forced, guard, &mut |m| {
        out.push(m.clone());
        false
    })?;
    Ok(out)
}

/// Size of a maximum matching by exhaustive search over the class-1 vertices.
pub fn brute_max_matching_size(g: &BipartiteGraph, guard: &SizeGuard) -> Result<usize> {
    guard.check(g)?;
    fn rec(g: &BipartiteGraph, u: Vertex, used: &mut [bool]) -> usize {
        if u == g.n1() {
            return 0;
        }
        let mut best = rec(g, u + 1, used);
        for &v in g.neighbors(u) {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + rec(g, u + 1, used));
                used[v] = false;
            }
        }
        best
    }
    Ok(rec(g, 0, &mut vec![false; g.vertex_count()]))
}

/// A solution of a 2-MLP instance: a perfect matching and the two paths
/// (as vertex sequences from `a_i` to `b_i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlpWitness {
    pub matching: Matching,
    pub p1: Vec<Vertex>,
    pub p2: Vec<Vertex>,
}

/// Exhaustive 2-MLP: tries every perfect matching (containing `cover` when
/// given) and every internally conformal `a1`-`b1` path, then looks for a
/// disjoint internally conformal `a2`-`b2` path.
pub fn brute_2mlp(
    problem: &MlpProblem,
    cover: Option<&[Edge]>,
    guard: &SizeGuard,
) -> Result<Option<MlpWitness>> {
    let g = &problem.graph;
    let [a1, a2, b1, b2] = [problem.a1, problem.a2, problem.b1, problem.b2];
    let mut witness = None;
    visit_perfect_matchings(g, cover.unwrap_or(&[]), guard, &mut |m| {
        let mut blocked = vec![false; g.vertex_count()];
        for t in [a1, a2, b1, b2] {
            blocked[t] = true;
        }
        let mut path = vec![a1];
        let mut found = None;
        conformal_paths(g, m, b1, &mut blocked, &mut path, &mut |p1, blocked| {
            if let Some(p2) = conformal_path_bfs(g, m, a2, b2, blocked) {
                found = Some((p1.to_vec(), p2));
                true
            } else {
                false
            }
        });
        if let Some((p1, p2)) = found {
            witness = Some(MlpWitness {
                matching: m.clone(),
                p1,
                p2,
            });
            true
        } else {
            false
        }
    })?;
    Ok(witness)
}

/// Extends `path` (which starts at a class-1 vertex) in every way to an
/// internally `m`-conformal path ending at `target`, avoiding `blocked`.
/// The callback sees each path with its interior blocked and returns `true`
/// to stop.
fn conformal_paths(
    g: &BipartiteGraph,
    m: &Matching,
    target: Vertex,
    blocked: &mut [bool],
    path: &mut Vec<Vertex>,
    f: &mut dyn FnMut(&[Vertex], &[bool]) -> bool,
) -> bool {
    let x = *path.last().expect("path starts at s");
    for &y in g.neighbors(x) {
        if y == target {
            path.push(y);
            let stop = f(path, blocked);
            path.pop();
            if stop {
                return true;
            }
            continue;
        }
        if blocked[y] {
            continue;
        }
        let z = m.mate(y).expect("perfect matching");
        if blocked[z] {
            continue;
        }
        blocked[y] = true;
        blocked[z] = true;
        path.push(y);
        path.push(z);
        let stop = conformal_paths(g, m, target, blocked, path, f);
        path.pop();
        path.pop();
        blocked[y] = false;
        blocked[z] = false;
        if stop {
            return true;
        }
    }
    false
}

/// Some internally `m`-conformal path from `s` to `t` avoiding `blocked`
/// (apart from `s` and `t` themselves).
fn conformal_path_bfs(
    g: &BipartiteGraph,
    m: &Matching,
    s: Vertex,
    t: Vertex,
    blocked: &[bool],
) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut prev = vec![usize::MAX; n];
    prev[s] = s;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if y == t {
                let mut path = vec![t, x];
                let mut w = x;
                while w != s {
                    let y2 = prev[w];
                    path.push(y2);
                    w = prev[y2];
                    path.push(w);
                }
                path.reverse();
                return Some(path);
            }
            if blocked[y] || prev[y] != usize::MAX {
                continue;
            }
            let z = m.mate(y).expect("perfect matching");
            if blocked[z] || prev[z] != usize::MAX {
                continue;
            }
            prev[y] = x;
            prev[z] = y;
            queue.push_back(z);
        }
    }
    None
}

/// Is there an internally `m`-conformal `a`-`b` path? Checks every simple
/// path from `a` to `b` directly against the definition.
pub fn brute_reach_internally_conformal(
    g: &BipartiteGraph,
    m: &Matching,
    a: Vertex,
    b: Vertex,
    guard: &SizeGuard,
) -> Result<bool> {
    guard.check(g)?;
    m.check_perfect_in(g)?;
    fn rec(g: &BipartiteGraph, m: &Matching, b: Vertex, path: &mut Vec<Vertex>, on: &mut [bool]) -> bool {
        let x = *path.last().unwrap();
        if x == b {
            let interior = &path[1..path.len() - 1];
            return interior.chunks(2).all(|c| c.len() == 2 && m.contains(c[0], c[1]));
        }
        for &y in g.neighbors(x) {
            if !on[y] {
                on[y] = true;
                path.push(y);
                let ok = rec(g, m, b, path, on);
                path.pop();
                on[y] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let mut on = vec![false; g.vertex_count()];
    on[a] = true;
    Ok(rec(g, m, b, &mut vec![a], &mut on))
}

/// Definitional tightness: every perfect matching has exactly one edge
/// leaving `x`.
pub fn check_tight_cut_bruteforce(g: &BipartiteGraph, x: &[Vertex], guard: &SizeGuard) -> Result<bool> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in x {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        inside[v] = true;
    }
    let mut tight = true;
    visit_perfect_matchings(g, &[], guard, &mut |m| {
        let crossing = m
            .edges(g)
            .iter()
            .filter(|&&(u, v)| inside[u] != inside[v])
            .count();
        if crossing != 1 {
            tight = false;
        }
        !tight
    })?;
    Ok(tight)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossKind {
    /// Two disjoint alternating paths with interleaving pegs.
    Matching,
    /// Additionally balanced pegs and paths of the same type.
    Strong,
    /// Additionally the cycle together with both paths is conformal.
    Conformal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cross {
    pub matching: Matching,
    pub p1: Vec<Vertex>,
    pub p2: Vec<Vertex>,
}

/// Searches for a cross of the given kind over the cycle `cycle` (a vertex
/// sequence; the closing edge is implied). The cycle must be conformal.
pub fn find_cross(
    g: &BipartiteGraph,
    cycle: &[Vertex],
    kind: CrossKind,
    guard: &SizeGuard,
) -> Result<Option<Cross>> {
    check_cycle(g, cycle)?;
    if !has_perfect_matching_without(g, cycle) {
        return Err(Error::InvalidParameter("the cycle is not conformal".into()));
    }
    let len = cycle.len();
    let mut on_cycle = vec![false; g.vertex_count()];
    for &v in cycle {
        on_cycle[v] = true;
    }
    let quads: Vec<[usize; 4]> = (0..len)
        .combinations(4)
        .map(|q| [q[0], q[1], q[2], q[3]])
        .filter(|q| {
            kind != CrossKind::Strong
                || q.iter().filter(|&&i| g.is_class1(cycle[i])).count() == 2
        })
        .collect();
    let mut result = None;
    visit_perfect_matchings(g, &[], guard, &mut |m| {
        for &[i, j, k, l] in &quads {
            let (s1, s2, t1, t2) = (cycle[i], cycle[j], cycle[k], cycle[l]);
            let mut blocked = on_cycle.clone();
            let mut found = None;
            alternating_paths(g, m, s1, t1, &mut blocked, &mut |p1, blocked| {
                let ty1 = path_type(m, p1);
                let mut inner = None;
                let mut blocked2 = blocked.to_vec();
                alternating_paths(g, m, s2, t2, &mut blocked2, &mut |p2, _| {
                    let ok = match kind {
                        CrossKind::Matching => true,
                        CrossKind::Strong => path_type(m, p2) == ty1,
                        CrossKind::Conformal => {
                            let mut all: Vec<Vertex> = cycle.to_vec();
                            all.extend(&p1[1..p1.len() - 1]);
                            all.extend(&p2[1..p2.len() - 1]);
                            has_perfect_matching_without(g, &all)
                        }
                    };
                    if ok {
                        inner = Some(p2.to_vec());
                    }
                    ok
                });
                match inner {
                    Some(p2) => {
                        found = Some((p1.to_vec(), p2));
                        true
                    }
                    None => false,
                }
            });
            if let Some((p1, p2)) = found {
                result = Some(Cross {
                    matching: m.clone(),
                    p1,
                    p2,
                });
                return true;
            }
        }
        false
    })?;
    Ok(result)
}

pub fn has_matching_cross(g: &BipartiteGraph, cycle: &[Vertex], guard: &SizeGuard) -> Result<bool> {
    Ok(find_cross(g, cycle, CrossKind::Matching, guard)?.is_some())
}

pub fn has_strong_matching_cross(g: &BipartiteGraph, cycle: &[Vertex], guard: &SizeGuard) -> Result<bool> {
    Ok(find_cross(g, cycle, CrossKind::Strong, guard)?.is_some())
}

pub fn has_conformal_cross(g: &BipartiteGraph, cycle: &[Vertex], guard: &SizeGuard) -> Result<bool> {
    Ok(find_cross(g, cycle, CrossKind::Conformal, guard)?.is_some())
}

/// `(first edge matched, last edge matched)` of an alternating path; equal
/// pairs mean equal types.
fn path_type(m: &Matching, p: &[Vertex]) -> (bool, bool) {
    let first = m.contains(p[0], p[1]);
    let last = m.contains(p[p.len() - 2], p[p.len() - 1]);
    // Type 3 paths are the same type whichever end carries the matched edge.
    if first != last {
        (true, false)
    } else {
        (first, last)
    }
}

/// Enumerates `m`-alternating paths from `s` to `t` whose interior avoids
/// `blocked`. The callback sees the path and the blocking mask with the
/// path's vertices added; it returns `true` to stop.
fn alternating_paths(
    g: &BipartiteGraph,
    m: &Matching,
    s: Vertex,
    t: Vertex,
    blocked: &mut [bool],
    f: &mut dyn FnMut(&[Vertex], &[bool]) -> bool,
) -> bool {
    fn rec(
        g: &BipartiteGraph,
        m: &Matching,
        t: Vertex,
        last_in_m: Option<bool>,
        path: &mut Vec<Vertex>,
        blocked: &mut [bool],
        f: &mut dyn FnMut(&[Vertex], &[bool]) -> bool,
    ) -> bool {
        let x = *path.last().unwrap();
        for &y in g.neighbors(x) {
            let in_m = m.contains(x, y);
            if last_in_m == Some(in_m) {
                continue;
            }
            if y == t {
                path.push(y);
                let stop = f(path, blocked);
                path.pop();
                if stop {
                    return true;
                }
                continue;
            }
            if blocked[y] {
                continue;
            }
            blocked[y] = true;
            path.push(y);
            let stop = rec(g, m, t, Some(in_m), path, blocked, f);
            path.pop();
            blocked[y] = false;
            if stop {
                return true;
            }
        }
        false
    }
    let (was_s, was_t) = (blocked[s], blocked[t]);
    blocked[s] = true;
    blocked[t] = true;
    let stop = rec(g, m, t, None, &mut vec![s], blocked, f);
    blocked[s] = was_s;
    blocked[t] = was_t;
    stop
}

fn check_cycle(g: &BipartiteGraph, cycle: &[Vertex]) -> Result<()> {
    if cycle.len() < 4 {
        return Err(Error::NotAPath("a cycle needs at least four vertices".into()));
    }
    check_path(g, cycle)?;
    let (first, last) = (cycle[0], cycle[cycle.len() - 1]);
    if !g.has_edge(first, last) {
        return Err(Error::NotAPath(format!("{last}-{first} does not close the cycle")));
    }
    Ok(())
}

/// A bisubdivision of K3,3: branch vertices (three of class 1, then three of
/// class 2) and the nine paths, path `3i + j` joining `branch[i]` to
/// `branch[3 + j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K33Bisubdivision {
    pub branch: [Vertex; 6],
    pub paths: Vec<Vec<Vertex>>,
}

impl K33Bisubdivision {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.paths.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self
            .paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        e.sort_unstable();
        e
    }
}

/// A conformal bisubdivision of K3,3 in `g`, containing every edge of the
/// cycle `required` when given.
pub fn find_conformal_k33_bisubdivision(
    g: &BipartiteGraph,
    required: Option<&[Vertex]>,
    guard: &SizeGuard,
) -> Result<Option<K33Bisubdivision>> {
    guard.check(g)?;
    let required_edges: Vec<Edge> = match required {
        Some(c) => {
            check_cycle(g, c)?;
            (0..c.len())
                .map(|i| {
                    let (u, v) = (c[i], c[(i + 1) % c.len()]);
                    (u.min(v), u.max(v))
                })
                .collect()
        }
        None => Vec::new(),
    };
    let big1: Vec<Vertex> = g.class1().filter(|&v| g.degree(v) >= 3).collect();
    let big2: Vec<Vertex> = g.class2().filter(|&v| g.degree(v) >= 3).collect();
    let mut search = K33Search {
        g,
        required: &required_edges,
        used: vec![false; g.vertex_count()],
        paths: Vec::new(),
        branch: [0; 6],
    };
    for a in big1.iter().copied().combinations(3) {
        for b in big2.iter().copied().combinations(3) {
            search.branch = [a[0], a[1], a[2], b[0], b[1], b[2]];
            for &v in &search.branch {
                search.used[v] = true;
            }
            let ok = search.route(0);
            for &v in &search.branch {
                search.used[v] = false;
            }
            if ok {
                return Ok(Some(K33Bisubdivision {
                    branch: search.branch,
                    paths: search.paths.clone(),
                }));
            }
        }
    }
    Ok(None)
}

pub fn brute_contains_k33(g: &BipartiteGraph, guard: &SizeGuard) -> Result<bool> {
    Ok(find_conformal_k33_bisubdivision(g, None, guard)?.is_some())
}

struct K33Search<'a> {
    g: &'a BipartiteGraph,
    required: &'a [Edge],
    used: Vec<bool>,
    paths: Vec<Vec<Vertex>>,
    branch: [Vertex; 6],
}

impl K33Search<'_> {
    fn route(&mut self, k: usize) -> bool {
        if k == 9 {
            return self.accept();
        }
        if !self.feasible(k) {
            return false;
        }
        let (s, t) = (self.branch[k / 3], self.branch[3 + k % 3]);
        let mut path = vec![s];
        self.extend(k, t, &mut path)
    }

    fn extend(&mut self, k: usize, t: Vertex, path: &mut Vec<Vertex>) -> bool {
        let x = *path.last().unwrap();
        let g = self.g;
        for &y in g.neighbors(x) {
            if y == t {
                path.push(t);
                self.paths.push(path.clone());
                if self.route(k + 1) {
                    path.pop();
                    return true;
                }
                self.paths.pop();
                path.pop();
                continue;
            }
            if self.used[y] {
                continue;
            }
            self.used[y] = true;
            path.push(y);
            let ok = self.extend(k, t, path);
            path.pop();
            self.used[y] = false;
            if ok {
                return true;
            }
        }
        false
    }

    /// Every branch vertex still needs one free edge per unrouted path.
    fn feasible(&self, k: usize) -> bool {
        let g = self.g;
        for (i, &v) in self.branch.iter().enumerate() {
            let pending: Vec<usize> = (k..9)
                .filter(|&p| if i < 3 { p / 3 == i } else { p % 3 == i - 3 })
                .collect();
            if pending.is_empty() {
                continue;
            }
            let free = g
                .neighbors(v)
                .iter()
                .filter(|&&w| {
                    !self.used[w]
                        || pending.iter().any(|&p| {
                            let other = if i < 3 { self.branch[3 + p % 3] } else { self.branch[p / 3] };
                            other == w
                        })
                })
                .count();
            if free < pending.len() {
                return false;
            }
        }
        true
    }

    fn accept(&self) -> bool {
        let mut on = vec![false; self.g.vertex_count()];
        for p in &self.paths {
            for &v in p {
                on[v] = true;
            }
        }
        if !self.required.is_empty() {
            let mut edges: Vec<Edge> = self
                .paths
                .iter()
                .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
                .collect();
            edges.sort_unstable();
            if !self.required.iter().all(|e| edges.binary_search(e).is_ok()) {
                return false;
            }
        }
        let covered: Vec<Vertex> = self.g.vertices().filter(|&v| on[v]).collect();
        has_perfect_matching_without(self.g, &covered)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, NamedGraph};

    fn cycle(k: usize) -> BipartiteGraph {
        let id = |p: usize| if p.is_multiple_of(2) { p / 2 } else { k + p / 2 };
        BipartiteGraph::new(k, k, (0..2 * k).map(|p| (id(p), id((p + 1) % (2 * k))))).unwrap()
    }

    #[test]
    fn perfect_matching_counts() {
        let guard = SizeGuard::default();
        let count = |g: &BipartiteGraph| enumerate_perfect_matchings(g, &guard).unwrap().len();
        assert_eq!(count(&BipartiteGraph::complete(2, 2)), 2);
        assert_eq!(count(&BipartiteGraph::complete(3, 3)), 6);
        assert_eq!(count(&cycle(4)), 2);
        assert_eq!(count(&generate(NamedGraph::Heawood).unwrap()), 24);
    }

    #[test]
    fn guard_refuses_large_inputs() {
        let tiny = SizeGuard {
            max_vertices: 4,
            max_matchings: 1,
        };
        let k33 = BipartiteGraph::complete(3, 3);
        assert!(matches!(enumerate_perfect_matchings(&k33, &tiny), Err(Error::Capacity(_))));
        let c4 = BipartiteGraph::complete(2, 2);
        assert!(matches!(enumerate_perfect_matchings(&c4, &tiny), Err(Error::Capacity(_))));
    }

    #[test]
    fn tight_cuts_by_definition() {
        let guard = SizeGuard::default();
        let k33 = BipartiteGraph::complete(3, 3);
        assert!(check_tight_cut_bruteforce(&k33, &[0], &guard).unwrap());
        assert!(!check_tight_cut_bruteforce(&k33, &[0, 1, 2], &guard).unwrap());
        // Class-1 ids 0,1,2; vertex 0 is adjacent to 3 and 5.
        assert!(check_tight_cut_bruteforce(&cycle(3), &[0, 1, 3], &guard).unwrap());
    }

    #[test]
    fn k33_searches() {
        let guard = SizeGuard::default();
        let k33 = BipartiteGraph::complete(3, 3);
        let found = find_conformal_k33_bisubdivision(&k33, Some(&[0, 3, 1, 4]), &guard)
            .unwrap()
            .unwrap();
        assert_eq!(found.edges().len(), 9);
        assert!(!brute_contains_k33(&generate(NamedGraph::Cube).unwrap(), &guard).unwrap());
        assert!(!brute_contains_k33(&generate(NamedGraph::Heawood).unwrap(), &guard).unwrap());
    }

    #[test]
    fn crosses_on_small_graphs() {
        let guard = SizeGuard::default();
        let k33 = BipartiteGraph::complete(3, 3);
        assert!(has_conformal_cross(&k33, &[0, 3, 1, 4], &guard).unwrap());
        let cube = generate(NamedGraph::Cube).unwrap();
        assert!(!has_strong_matching_cross(&cube, &crate::generators::CUBE_FACE, &guard).unwrap());
        assert!(has_matching_cross(&k33, &[0, 3, 1, 4], &guard).unwrap());
    }
}
