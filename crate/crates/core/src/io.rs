//! Line-oriented text formats.
//!
//! Graphs: a `p bip <n1> <n2> <m>` header followed by `m` lines `e <u> <v>`.
//! Matchings: lines `m <u> <v>`. Digraphs: `p dig <n> <m>` then `a <u> <v>`.
//! `#` starts a comment; blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{BipartiteGraph, Vertex};
use crate::matching::Matching;
use crate::mdirection::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is the input as a whole.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed line: {0}")]
    BadLine(String),
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("edge {0}-{1} joins two vertices of the same colour class")]
    IntraClassEdge(usize, usize),
    #[error("edge {0}-{1} appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("header announces {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("{0}-{1} is not an edge of the graph")]
    MissingEdge(usize, usize),
    #[error("vertex {0} is matched twice")]
    NotAMatching(usize),
    #[error("loop at node {0}")]
    Loop(usize),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn numbers(line: usize, tokens: &[&str], want: usize) -> Result<Vec<usize>, ParseError> {
    if tokens.len() != want {
        return Err(err(
            line,
            ParseErrorKind::BadLine(format!("expected {want} numbers, got {}", tokens.len())),
        ));
    }
    tokens
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| err(line, ParseErrorKind::BadLine(format!("not a number: {t}"))))
        })
        .collect()
}

fn header(line: usize, tokens: &[&str], kind: &str, want: usize) -> Result<Vec<usize>, ParseError> {
    if tokens.len() != want + 2 || tokens[0] != "p" || tokens[1] != kind {
        return Err(err(
            line,
            ParseErrorKind::BadHeader(format!("expected `p {kind}` followed by {want} numbers")),
        ));
    }
    numbers(line, &tokens[2..], want)
        .map_err(|e| err(line, ParseErrorKind::BadHeader(e.kind.to_string())))
}

/// A graph optionally followed by `m` lines describing a matching of it.
pub fn parse_graph_with_matching(
    text: &str,
) -> Result<(BipartiteGraph, Option<Matching>), ParseError> {
    let mut lines = content_lines(text);
    let (hline, htokens) = lines.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    let h = header(hline, &htokens, "bip", 3)?;
    let (n1, n2, m) = (h[0], h[1], h[2]);
    let count = n1 + n2;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    let mut matched: Vec<(usize, Vertex, Vertex)> = Vec::new();
    for (line, tokens) in lines {
        match tokens[0] {
            "e" if matched.is_empty() => {
                let uv = numbers(line, &tokens[1..], 2)?;
                let (u, v) = (uv[0], uv[1]);
                for w in [u, v] {
                    if w >= count {
                        return Err(err(line, ParseErrorKind::UnknownVertex(w)));
                    }
                }
                if (u < n1) == (v < n1) {
                    return Err(err(line, ParseErrorKind::IntraClassEdge(u, v)));
                }
                let e = if u < n1 { (u, v) } else { (v, u) };
                if !seen.insert(e) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge(u, v)));
                }
                edges.push(e);
            }
            "m" => {
                let uv = numbers(line, &tokens[1..], 2)?;
                matched.push((line, uv[0], uv[1]));
            }
            other => {
                return Err(err(
                    line,
                    ParseErrorKind::BadLine(format!("unexpected record `{other}`")),
                ))
            }
        }
    }
    if edges.len() != m {
        return Err(err(
            hline,
            ParseErrorKind::CountMismatch {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    let g = BipartiteGraph::new(n1, n2, edges).expect("edges validated above");
    if matched.is_empty() {
        return Ok((g, None));
    }
    let mat = build_matching(&g, matched)?;
    Ok((g, Some(mat)))
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph, ParseError> {
    let (g, m) = parse_graph_with_matching(text)?;
    if m.is_some() {
        let line = content_lines(text)
            .find(|(_, t)| t[0] == "m")
            .map_or(0, |(l, _)| l);
        return Err(err(
            line,
            ParseErrorKind::BadLine("matching records are not allowed here".into()),
        ));
    }
    Ok(g)
}

pub fn serialize_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("p bip {} {} {}\n", g.n1(), g.n2(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Parses `m u v` lines against `g`.
pub fn parse_matching(g: &BipartiteGraph, text: &str) -> Result<Matching, ParseError> {
    let mut pairs = Vec::new();
    for (line, tokens) in content_lines(text) {
        if tokens[0] != "m" {
            return Err(err(
                line,
                ParseErrorKind::BadLine(format!("expected `m`, found `{}`", tokens[0])),
            ));
        }
        let uv = numbers(line, &tokens[1..], 2)?;
        pairs.push((line, uv[0], uv[1]));
    }
    build_matching(g, pairs)
}

fn build_matching(
    g: &BipartiteGraph,
    pairs: Vec<(usize, Vertex, Vertex)>,
) -> Result<Matching, ParseError> {
    let mut m = Matching::empty(g.vertex_count());
    for (line, u, v) in pairs {
        for w in [u, v] {
            if !g.contains_vertex(w) {
                return Err(err(line, ParseErrorKind::UnknownVertex(w)));
            }
        }
        if !g.has_edge(u, v) {
            return Err(err(line, ParseErrorKind::MissingEdge(u, v)));
        }
        for w in [u, v] {
            if m.is_covered(w) {
                return Err(err(line, ParseErrorKind::NotAMatching(w)));
            }
        }
        m.set(u, v);
    }
    Ok(m)
}

pub fn serialize_matching(g: &BipartiteGraph, m: &Matching) -> String {
    let mut out = String::new();
    for (u, v) in m.edges(g) {
        writeln!(out, "m {u} {v}").unwrap();
    }
    out
}

pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, htokens) = lines.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    let h = header(hline, &htokens, "dig", 2)?;
    let (n, m) = (h[0], h[1]);
    let mut arcs = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    for (line, tokens) in lines {
        if tokens[0] != "a" {
            return Err(err(
                line,
                ParseErrorKind::BadLine(format!("expected `a`, found `{}`", tokens[0])),
            ));
        }
        let uv = numbers(line, &tokens[1..], 2)?;
        let (u, v) = (uv[0], uv[1]);
        for w in [u, v] {
            if w >= n {
                return Err(err(line, ParseErrorKind::UnknownVertex(w)));
            }
        }
        if u == v {
            return Err(err(line, ParseErrorKind::Loop(u)));
        }
        if !seen.insert((u, v)) {
            return Err(err(line, ParseErrorKind::DuplicateEdge(u, v)));
        }
        arcs.push((u, v));
    }
    if arcs.len() != m {
        return Err(err(
            hline,
            ParseErrorKind::CountMismatch {
                expected: m,
                found: arcs.len(),
            },
        ));
    }
    Ok(Digraph::new(n, arcs).expect("arcs validated above"))
}

pub fn serialize_digraph(d: &Digraph) -> String {
    let mut out = format!("p dig {} {}\n", d.node_count(), d.arc_count());
    for (u, v) in d.arcs() {
        writeln!(out, "a {u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &str = "p bip 2 2 4\ne 0 2\ne 0 3\ne 1 2\ne 1 3\n";

    #[test]
    fn parses_c4() {
        let g = parse_graph(C4).unwrap();
        assert_eq!(g, BipartiteGraph::complete(2, 2));
        assert_eq!(serialize_graph(&g), C4);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a square\n\np bip 2 2 4 # header\ne 0 2\ne 3 0\n\ne 1 2\ne 1 3\n";
        assert_eq!(parse_graph(text).unwrap().edge_count(), 4);
    }

    #[test]
    fn distinct_errors_name_the_line() {
        let intra = parse_graph("p bip 2 2 1\ne 0 1\n").unwrap_err();
        assert_eq!(intra, err(2, ParseErrorKind::IntraClassEdge(0, 1)));
        let unknown = parse_graph("p bip 2 2 1\ne 0 7\n").unwrap_err();
        assert_eq!(unknown, err(2, ParseErrorKind::UnknownVertex(7)));
        let dup = parse_graph("p bip 2 2 2\ne 0 2\ne 2 0\n").unwrap_err();
        assert_eq!(dup, err(3, ParseErrorKind::DuplicateEdge(2, 0)));
        let bad = parse_graph("p graph 2 2 0\n").unwrap_err();
        assert!(matches!(bad.kind, ParseErrorKind::BadHeader(_)));
        assert_eq!(bad.line, 1);
        let count = parse_graph("p bip 2 2 3\ne 0 2\n").unwrap_err();
        assert_eq!(count.kind, ParseErrorKind::CountMismatch { expected: 3, found: 1 });
        assert_eq!(parse_graph("").unwrap_err().kind, ParseErrorKind::MissingHeader);
    }

    #[test]
    fn matching_files() {
        let g = parse_graph(C4).unwrap();
        let m = parse_matching(&g, "m 0 3\nm 2 1\n").unwrap();
        assert!(m.is_perfect());
        assert_eq!(serialize_matching(&g, &m), "m 0 3\nm 1 2\n");
        assert_eq!(
            parse_matching(&g, "m 0 2\nm 1 2\n").unwrap_err(),
            err(2, ParseErrorKind::NotAMatching(2))
        );
    }

    #[test]
    fn combined_file() {
        let text = format!("{C4}m 0 2\nm 1 3\n");
        let (g, m) = parse_graph_with_matching(&text).unwrap();
        assert_eq!(m.unwrap().edges(&g), vec![(0, 2), (1, 3)]);
        assert!(parse_graph(&text).is_err());
        assert!(parse_graph_with_matching(&format!("{C4}m 0 2\ne 1 3\n")).is_err());
    }

    #[test]
    fn digraph_round_trip() {
        let text = "p dig 3 3\na 0 1\na 1 2\na 2 0\n";
        let d = parse_digraph(text).unwrap();
        assert_eq!(serialize_digraph(&d), text);
        assert_eq!(
            parse_digraph("p dig 2 1\na 1 1\n").unwrap_err(),
            err(2, ParseErrorKind::Loop(1))
        );
    }
}
