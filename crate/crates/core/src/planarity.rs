//! Planarity testing by path addition (Demoucron, Malgrange and Pertuiset),
//! run separately on each biconnected block.

use std::collections::{HashSet, VecDeque};

use crate::graph::{BipartiteGraph, Vertex};

/// Planarity verdict. `faces` holds the facial cycles of an embedding when
/// the graph is planar and 2-connected; otherwise it is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planarity {
    pub planar: bool,
    pub faces: Option<Vec<Vec<Vertex>>>,
}

pub fn is_planar(g: &BipartiteGraph) -> Planarity {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
    let blocks = biconnected_blocks(n, &adj);
    let two_connected =
        n >= 3 && g.is_connected() && blocks.len() == 1 && blocks[0].len() == g.edge_count();
    let mut faces = None;
    for block in &blocks {
        if block.len() < 3 {
            // A bridge, or (in general graphs) a tiny block: always planar.
            continue;
        }
        match embed_block(n, block) {
            Some(f) => {
                if two_connected {
                    faces = Some(f);
                }
            }
            None => {
                return Planarity {
                    planar: false,
                    faces: None,
                }
            }
        }
    }
    Planarity {
        planar: true,
        faces,
    }
}

/// Edge sets of the biconnected blocks.
fn biconnected_blocks(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }

    fn dfs(s: &mut State<'_>, u: usize, parent: usize) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.adj[u].len() {
            let v = s.adj[u][i];
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, u);
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.blocks.push(block);
                }
            } else if v != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }

    let mut s = State {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for r in 0..n {
        if s.disc[r] == 0 {
            dfs(&mut s, r, usize::MAX);
        }
    }
    s.blocks
}

enum Fragment {
    Chord(usize, usize),
    Bridge {
        vertices: Vec<usize>,
        attachments: Vec<usize>,
    },
}

impl Fragment {
    fn attachments(&self) -> Vec<usize> {
        match self {
            Fragment::Chord(u, v) => vec![*u, *v],
            Fragment::Bridge { attachments, .. } => attachments.clone(),
        }
    }
}

/// Embeds one 2-connected block; returns its faces or `None` if non-planar.
fn embed_block(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));

    let cycle = find_cycle(&adj, edges[0].0);
    let mut placed_v = vec![false; n];
    let mut placed_e: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        placed_v[v] = true;
        placed_e.insert(key(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![cycle.clone(), cycle.into_iter().rev().collect::<Vec<_>>()];

    while placed_e.len() < edges.len() {
        let fragments = fragments(&adj, edges, &placed_v, &placed_e);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let att = frag.attachments();
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| att.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("some fragment remains");
        let path = fragment_path(&adj, &placed_v, &fragments[fi]);
        for w in path.windows(2) {
            placed_e.insert(key(w[0], w[1]));
        }
        for &v in &path {
            placed_v[v] = true;
        }
        let (f1, f2) = split_face(&faces[face_idx], &path);
        faces[face_idx] = f1;
        faces.push(f2);
    }
    Some(faces)
}

fn find_cycle(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(root, 0usize)];
    depth[root] = 0;
    while let Some(&mut (u, ref mut i)) = stack.last_mut() {
        if *i == adj[u].len() {
            stack.pop();
            continue;
        }
        let v = adj[u][*i];
        *i += 1;
        if depth[v] == usize::MAX {
            depth[v] = depth[u] + 1;
            parent[v] = u;
            stack.push((v, 0));
        } else if v != parent[u] && depth[v] < depth[u] {
            let mut cycle = vec![u];
            let mut w = u;
            while w != v {
                w = parent[w];
                cycle.push(w);
            }
            return cycle;
        }
    }
    unreachable!("a 2-connected block with three or more edges has a cycle")
}

fn fragments(
    adj: &[Vec<usize>],
    edges: &[(usize, usize)],
    placed_v: &[bool],
    placed_e: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(u, v) in edges {
        if placed_v[u] && placed_v[v] && !placed_e.contains(&(u.min(v), u.max(v))) {
            out.push(Fragment::Chord(u, v));
        }
    }
    let n = adj.len();
    let mut seen = vec![false; n];
    let in_block: Vec<bool> = (0..n).map(|v| !adj[v].is_empty()).collect();
    for s in 0..n {
        if seen[s] || placed_v[s] || !in_block[s] {
            continue;
        }
        seen[s] = true;
        let mut vertices = Vec::new();
        let mut attachments = Vec::new();
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            vertices.push(u);
            for &w in &adj[u] {
                if placed_v[w] {
                    if !attachments.contains(&w) {
                        attachments.push(w);
                    }
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        attachments.sort_unstable();
        out.push(Fragment::Bridge {
            vertices,
            attachments,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachments.
fn fragment_path(adj: &[Vec<usize>], placed_v: &[bool], frag: &Fragment) -> Vec<usize> {
    match frag {
        Fragment::Chord(u, v) => vec![*u, *v],
        Fragment::Bridge {
            vertices,
            attachments,
        } => {
            let start = attachments[0];
            let inside: HashSet<usize> = vertices.iter().copied().collect();
            let mut prev = vec![usize::MAX; adj.len()];
            let mut queue = VecDeque::new();
            for &w in &adj[start] {
                if inside.contains(&w) && prev[w] == usize::MAX {
                    prev[w] = start;
                    queue.push_back(w);
                }
            }
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if placed_v[w] && w != start {
                        let mut path = vec![w, u];
                        let mut x = u;
                        while prev[x] != start {
                            x = prev[x];
                            path.push(x);
                        }
                        path.push(start);
                        path.reverse();
                        return path;
                    }
                    if inside.contains(&w) && prev[w] == usize::MAX {
                        prev[w] = u;
                        queue.push_back(w);
                    }
                }
            }
            unreachable!("fragments of a 2-connected block have two attachments")
        }
    }
}

/// Splits a facial cycle along a path joining two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().expect("path");
    let len = face.len();
    let ia = face.iter().position(|&v| v == a).expect("a on face");
    let rotated: Vec<usize> = (0..len).map(|k| face[(ia + k) % len]).collect();
    let j = rotated.iter().position(|&v| v == b).expect("b on face");
    let interior = &path[1..path.len() - 1];

    let mut f1: Vec<usize> = rotated[..=j].to_vec();
    f1.extend(interior.iter().rev());
    let mut f2: Vec<usize> = rotated[j..].to_vec();
    f2.push(a);
    f2.extend(interior.iter());
    (f1, f2)
}
