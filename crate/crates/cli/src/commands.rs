use std::fmt::Write as _;
use std::io::Read as _;

use itertools::Itertools;
use matchlink::braces::{brace_decomposition, find_nontrivial_tight_cut, is_brace, Provenance};
use matchlink::conformal::{is_extendible, is_extendible_by_surplus, is_matching_covered};
use matchlink::corpus::random_matching_covered;
use matchlink::io::{
    parse_digraph, parse_graph_with_matching, parse_matching, serialize_digraph, serialize_graph,
    serialize_matching,
};
use matchlink::k33::{brace_verdicts, contains_k33};
use matchlink::matching::{max_matching, perfect_matching};
use matchlink::mdirection::{from_digraph, m_direction, reach_internally_conformal};
use matchlink::mlp::{solve_2mlp, solve_2mlp_traced, Branch, Cover, MlpProblem};
use matchlink::oracle::{
    brute_2mlp, brute_contains_k33, brute_max_matching_size, brute_reach_internally_conformal,
    check_tight_cut_bruteforce, enumerate_perfect_matchings, find_conformal_k33_bisubdivision, find_cross,
    CrossKind, MlpWitness, SizeGuard,
};
use matchlink::{generate, BipartiteGraph, Matching, NamedGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{CliError, Report, CAPACITY, DISAGREEMENT, NO, YES};
use crate::{CrossKindArg, GenArgs, OracleQuery, Terminals};

type Result<T> = std::result::Result<T, CliError>;

fn read_input(path: &str) -> Result<String> {
    let io_err = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_err)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(io_err)
}

/// A graph file, possibly followed by matching lines.
fn load(path: &str) -> Result<(BipartiteGraph, Option<Matching>)> {
    let text = read_input(path)?;
    parse_graph_with_matching(&text).map_err(|source| CliError::Parse {
        path: path.to_string(),
        source,
    })
}

fn load_graph(path: &str) -> Result<BipartiteGraph> {
    Ok(load(path)?.0)
}

fn graph_report(g: &BipartiteGraph) -> Report {
    Report::new(serialize_graph(g), json!(g), YES)
}

pub fn gen(args: &GenArgs) -> Result<Report> {
    let g = if args.random {
        let (k, seed) = (args.k.expect("clap requires k"), args.seed.expect("clap requires seed"));
        if k == 0 || (k > 1 && args.layers < 2) {
            return Err(CliError::Usage(
                "--random needs k >= 1 and, for k > 1, at least two layers".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_matching_covered(&mut rng, k, args.layers)
    } else {
        let name = args.name.as_deref().expect("clap requires a name");
        generate(NamedGraph::from_name(name, args.k)?)?
    };
    Ok(graph_report(&g))
}

pub fn pm(path: &str) -> Result<Report> {
    let g = load_graph(path)?;
    Ok(match perfect_matching(&g) {
        Some(m) => Report::new(serialize_matching(&g, &m), json!({ "matching": m.edges(&g) }), YES),
        None => Report::new(
            "no perfect matching\n".into(),
            json!({ "matching": null, "maximum": max_matching(&g).len() }),
            NO,
        ),
    })
}

fn provenance_label(p: &Provenance) -> String {
    match p {
        Provenance::Original(v) => v.to_string(),
        Provenance::Contracted(set) => format!("C:{{{}}}", set.iter().join(",")),
    }
}

pub fn braces(path: &str) -> Result<Report> {
    let g = load_graph(path)?;
    let pieces = brace_decomposition(&g)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let h = &piece.graph;
        writeln!(text, "# brace {} of {}", i + 1, pieces.len()).unwrap();
        text += &serialize_graph(h);
        let labels: Vec<String> = piece.provenance.iter().map(provenance_label).collect();
        for (node, label) in labels.iter().enumerate() {
            writeln!(text, "# node {node}: {label}").unwrap();
        }
        out.push(json!({ "graph": h, "provenance": labels }));
    }
    Ok(Report::new(text, json!({ "braces": out }), YES))
}

pub fn k33free(path: &str) -> Result<Report> {
    let g = load_graph(path)?;
    let verdicts = brace_verdicts(&g)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for (i, (piece, has)) in verdicts.iter().enumerate() {
        let h = &piece.graph;
        let what = if *has { "contains K3,3" } else { "K3,3-free" };
        writeln!(text, "brace {} ({} vertices, {} edges): {what}", i + 1, h.vertex_count(), h.edge_count()).unwrap();
        out.push(json!({ "vertices": h.vertex_count(), "edges": h.edge_count(), "contains_k33": has }));
    }
    let free = verdicts.iter().all(|(_, has)| !has);
    writeln!(text, "K3,3-free: {}", yes_no(free)).unwrap();
    Ok(Report::new(text, json!({ "braces": out, "k33_free": free }), Report::verdict(free)))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn problem(g: BipartiteGraph, t: Terminals) -> Result<MlpProblem> {
    Ok(MlpProblem::new(g, t.a1, t.a2, t.b1, t.b2)?)
}

fn describe_branch(b: &Branch) -> String {
    match b {
        Branch::BothDirect => "holds a1b1 and a2b2".into(),
        Branch::Reachability => "reachability in the M-direction".into(),
        Branch::Inadmissible((u, v)) => format!("gadget edge {u}-{v} is inadmissible"),
        Branch::Brace { vertices } => format!("K3,3 test on a brace of {vertices} vertices"),
        Branch::NoBrace => "no brace holds the gadget".into(),
    }
}

fn cover_label(c: &Cover) -> String {
    format!("{{{}}}", c.edges.iter().map(|(u, v)| format!("{u}-{v}")).join(", "))
}

fn witness_text(g: &BipartiteGraph, w: &MlpWitness) -> String {
    let mut text = serialize_matching(g, &w.matching);
    writeln!(text, "path {}", w.p1.iter().join(" ")).unwrap();
    writeln!(text, "path {}", w.p2.iter().join(" ")).unwrap();
    text
}

fn witness_json(g: &BipartiteGraph, w: &MlpWitness) -> Value {
    json!({ "matching": w.matching.edges(g), "paths": [w.p1, w.p2] })
}

pub fn mlp2(path: &str, t: Terminals, witness: bool, verbose: bool) -> Result<Report> {
    let p = problem(load_graph(path)?, t)?;
    let (answer, traces) = if verbose {
        solve_2mlp_traced(&p)?
    } else {
        (solve_2mlp(&p)?, Vec::new())
    };
    let mut text = format!("{}\n", yes_no(answer));
    let mut covers = Vec::new();
    for tr in &traces {
        writeln!(
            text,
            "cover {}: {} -> {}",
            cover_label(&tr.cover),
            describe_branch(&tr.branch),
            yes_no(tr.holds)
        )
        .unwrap();
        covers.push(json!({ "cover": tr.cover.edges, "branch": describe_branch(&tr.branch), "holds": tr.holds }));
    }
    let mut out = json!({ "answer": yes_no(answer) });
    if verbose {
        out["covers"] = json!(covers);
    }
    if witness && answer {
        let w = brute_2mlp(&p, None, &SizeGuard::default())?
            .ok_or_else(|| CliError::Lib(matchlink::Error::StructuralAnomaly("the oracle found no witness".into())))?;
        text += &witness_text(&p.graph, &w);
        out["witness"] = witness_json(&p.graph, &w);
    }
    Ok(Report::new(text, out, Report::verdict(answer)))
}

pub fn convert(path: &str, matching: Option<&str>) -> Result<Report> {
    let text = read_input(path)?;
    let parse_err = |source| CliError::Parse {
        path: path.to_string(),
        source,
    };
    let is_digraph = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().nth(1) == Some("dig"));
    if is_digraph {
        if matching.is_some() {
            return Err(CliError::Usage("--matching applies to graph inputs only".into()));
        }
        let d = parse_digraph(&text).map_err(parse_err)?;
        let (g, m) = from_digraph(&d);
        let out = serialize_graph(&g) + &serialize_matching(&g, &m);
        return Ok(Report::new(out, json!({ "graph": g, "matching": m.edges(&g) }), YES));
    }
    let (g, inline) = parse_graph_with_matching(&text).map_err(parse_err)?;
    let m = match matching {
        Some(mpath) => parse_matching(&g, &read_input(mpath)?).map_err(|source| CliError::Parse {
            path: mpath.to_string(),
            source,
        })?,
        None => match inline {
            Some(m) => m,
            None => perfect_matching(&g).ok_or(matchlink::Error::NoPerfectMatching)?,
        },
    };
    let d = m_direction(&g, &m)?.digraph;
    Ok(Report::new(serialize_digraph(&d), json!(d), YES))
}

pub fn oracle(query: OracleQuery) -> Result<Report> {
    let guard = SizeGuard::default();
    match query {
        OracleQuery::Mlp2 {
            graph,
            terminals,
            witness,
        } => {
            let p = problem(load_graph(&graph)?, terminals)?;
            let found = brute_2mlp(&p, None, &guard)?;
            let mut text = format!("{}\n", yes_no(found.is_some()));
            let mut out = json!({ "answer": yes_no(found.is_some()) });
            if let (true, Some(w)) = (witness, &found) {
                text += &witness_text(&p.graph, w);
                out["witness"] = witness_json(&p.graph, w);
            }
            Ok(Report::new(text, out, Report::verdict(found.is_some())))
        }
        OracleQuery::Cross { graph, cycle, kind } => {
            let g = load_graph(&graph)?;
            let kind = match kind {
                CrossKindArg::Matching => CrossKind::Matching,
                CrossKindArg::Strong => CrossKind::Strong,
                CrossKindArg::Conformal => CrossKind::Conformal,
            };
            let cross = find_cross(&g, &cycle, kind, &guard)?;
            let mut text = format!("{}\n", yes_no(cross.is_some()));
            let mut out = json!({ "answer": yes_no(cross.is_some()) });
            if let Some(c) = &cross {
                text += &serialize_matching(&g, &c.matching);
                writeln!(text, "path {}", c.p1.iter().join(" ")).unwrap();
                writeln!(text, "path {}", c.p2.iter().join(" ")).unwrap();
                out["matching"] = json!(c.matching.edges(&g));
                out["paths"] = json!([c.p1, c.p2]);
            }
            Ok(Report::new(text, out, Report::verdict(cross.is_some())))
        }
        OracleQuery::K33 { graph } => {
            let g = load_graph(&graph)?;
            let sub = find_conformal_k33_bisubdivision(&g, None, &guard)?;
            let free = sub.is_none();
            let mut text = format!("K3,3-free: {}\n", yes_no(free));
            let mut out = json!({ "k33_free": free });
            if let Some(s) = &sub {
                writeln!(text, "branch {}", s.branch.iter().join(" ")).unwrap();
                for p in &s.paths {
                    writeln!(text, "path {}", p.iter().join(" ")).unwrap();
                }
                out["branch"] = json!(s.branch);
                out["paths"] = json!(s.paths);
            }
            Ok(Report::new(text, out, Report::verdict(free)))
        }
        OracleQuery::Tightcut { graph, shore } => {
            let g = load_graph(&graph)?;
            let tight = check_tight_cut_bruteforce(&g, &shore, &guard)?;
            Ok(Report::new(
                format!("tight: {}\n", yes_no(tight)),
                json!({ "tight": tight }),
                Report::verdict(tight),
            ))
        }
    }
}

enum Status {
    Agree,
    Disagree(String),
    Skipped(String),
    Capacity(String),
}

/// Runs one comparison; capacity errors from the oracle are recorded
/// rather than aborting the whole run.
fn compare(f: impl FnOnce() -> Result<Status>) -> Result<Status> {
    match f() {
        Err(CliError::Lib(matchlink::Error::Capacity(msg))) => Ok(Status::Capacity(msg)),
        other => other,
    }
}

fn agree_if(ok: bool, detail: impl FnOnce() -> String) -> Status {
    if ok {
        Status::Agree
    } else {
        Status::Disagree(detail())
    }
}

pub fn crosscheck(path: &str) -> Result<Report> {
    let g = load_graph(path)?;
    let guard = SizeGuard::default();
    let pm = perfect_matching(&g);
    let covered = pm.is_some() && is_matching_covered(&g)?;
    let mut checks: Vec<(&str, Status)> = Vec::new();

    checks.push((
        "maximum matching",
        compare(|| {
            let (fast, slow) = (max_matching(&g).len(), brute_max_matching_size(&g, &guard)?);
            Ok(agree_if(fast == slow, || format!("{fast} versus {slow}")))
        })?,
    ));

    checks.push((
        "matching covered",
        compare(|| {
            let Some(_) = &pm else {
                return Ok(Status::Skipped("no perfect matching".into()));
            };
            let mut used: Vec<_> = enumerate_perfect_matchings(&g, &guard)?
                .iter()
                .flat_map(|m| m.edges(&g))
                .collect();
            used.sort_unstable();
            used.dedup();
            let slow = g.is_connected() && used.len() == g.edge_count();
            Ok(agree_if(covered == slow, || format!("{covered} versus {slow}")))
        })?,
    ));

    checks.push((
        "extendibility",
        compare(|| {
            if g.n1() >= 24 {
                return Ok(Status::Skipped("class 1 too large for the surplus check".into()));
            }
            let bad: Vec<usize> = [1, 2]
                .into_iter()
                .filter(|&k| is_extendible(&g, k) != is_extendible_by_surplus(&g, k))
                .collect();
            Ok(agree_if(bad.is_empty(), || format!("conditions differ for k in {bad:?}")))
        })?,
    ));

    checks.push((
        "tight cuts",
        compare(|| {
            if !covered {
                return Ok(Status::Skipped("not matching covered".into()));
            }
            let cut = find_nontrivial_tight_cut(&g)?;
            if let Some(c) = &cut {
                if !check_tight_cut_bruteforce(&g, &c.shore, &guard)? {
                    return Ok(Status::Disagree(format!("shore {:?} is not tight", c.shore)));
                }
            }
            let fast = is_brace(&g);
            let slow = g.vertex_count() == 4 || (g.vertex_count() >= 6 && cut.is_none());
            Ok(agree_if(fast == slow, || format!("brace {fast} versus {slow}")))
        })?,
    ));

    checks.push((
        "K3,3",
        compare(|| {
            if !covered {
                return Ok(Status::Skipped("not matching covered".into()));
            }
            let (fast, slow) = (contains_k33(&g)?, brute_contains_k33(&g, &guard)?);
            Ok(agree_if(fast == slow, || format!("{fast} versus {slow}")))
        })?,
    ));

    checks.push((
        "reachability",
        compare(|| {
            let Some(m) = &pm else {
                return Ok(Status::Skipped("no perfect matching".into()));
            };
            for (a, b) in g.class1().cartesian_product(g.class2()) {
                let fast = reach_internally_conformal(&g, m, a, b)?;
                if fast != brute_reach_internally_conformal(&g, m, a, b, &guard)? {
                    return Ok(Status::Disagree(format!("{a} to {b}")));
                }
            }
            Ok(Status::Agree)
        })?,
    ));

    checks.push((
        "2-MLP",
        compare(|| {
            if pm.is_none() || g.n1() < 2 {
                return Ok(Status::Skipped("needs a perfect matching and two vertices per class".into()));
            }
            guard.check(&g)?;
            for (a1, a2) in g.class1().tuple_combinations() {
                for (b1, b2) in g.class2().tuple_combinations().flat_map(|(x, y)| [(x, y), (y, x)]) {
                    let p = MlpProblem::new(g.clone(), a1, a2, b1, b2)?;
                    let fast = solve_2mlp(&p)?;
                    if fast != brute_2mlp(&p, None, &guard)?.is_some() {
                        return Ok(Status::Disagree(format!("terminals {a1} {a2} {b1} {b2}")));
                    }
                }
            }
            Ok(Status::Agree)
        })?,
    ));

    let mut text = String::new();
    let mut rows = Vec::new();
    let (mut disagree, mut capacity) = (false, false);
    for (name, status) in &checks {
        let (label, detail) = match status {
            Status::Agree => ("agree", String::new()),
            Status::Disagree(d) => {
                disagree = true;
                ("DISAGREE", d.clone())
            }
            Status::Skipped(d) => ("skipped", d.clone()),
            Status::Capacity(d) => {
                capacity = true;
                ("capacity", d.clone())
            }
        };
        if detail.is_empty() {
            writeln!(text, "{label:<9}{name}").unwrap();
        } else {
            writeln!(text, "{label:<9}{name}: {detail}").unwrap();
        }
        rows.push(json!({ "check": name, "status": label.to_lowercase(), "detail": detail }));
    }
    let (summary, code) = if disagree {
        ("disagreement", DISAGREEMENT)
    } else if capacity {
        ("incomplete", CAPACITY)
    } else {
        ("agree", YES)
    };
    writeln!(text, "crosscheck: {summary}").unwrap();
    Ok(Report::new(text, json!({ "checks": rows, "result": summary }), code))
}
