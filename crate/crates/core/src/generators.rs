//! Named graphs with fixed labellings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compose::{four_cycle_sum, Summand};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedGraph {
    C4,
    K33,
    Cube,
    Heawood,
    Rotunda,
    T10,
    /// The Moebius ladder on `4k + 2` vertices.
    MoebiusLadder(usize),
}

impl NamedGraph {
    /// Parses a name such as `heawood` or `moebius`; the ladder needs `k`.
    pub fn from_name(name: &str, k: Option<usize>) -> Result<NamedGraph> {
        let g = match name.to_ascii_lowercase().as_str() {
            "c4" => NamedGraph::C4,
            "k33" => NamedGraph::K33,
            "cube" => NamedGraph::Cube,
            "heawood" => NamedGraph::Heawood,
            "rotunda" => NamedGraph::Rotunda,
            "t10" => NamedGraph::T10,
            "moebius" | "moebius-ladder" | "mobius" => NamedGraph::MoebiusLadder(k.ok_or_else(
                || Error::InvalidParameter("the Moebius ladder needs k".into()),
            )?),
            other => return Err(Error::InvalidParameter(format!("unknown graph `{other}`"))),
        };
        Ok(g)
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::C4 => write!(f, "c4"),
            NamedGraph::K33 => write!(f, "k33"),
            NamedGraph::Cube => write!(f, "cube"),
            NamedGraph::Heawood => write!(f, "heawood"),
            NamedGraph::Rotunda => write!(f, "rotunda"),
            NamedGraph::T10 => write!(f, "t10"),
            NamedGraph::MoebiusLadder(k) => write!(f, "moebius-{k}"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts the `Display` form, e.g. `moebius-2`.
    fn from_str(s: &str) -> Result<Self> {
        match s.rsplit_once('-') {
            Some((head, k)) if head.starts_with("mo") => {
                let k = k
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad ladder size in `{s}`")))?;
                NamedGraph::from_name(head, Some(k))
            }
            _ => NamedGraph::from_name(s, None),
        }
    }
}

pub fn generate(name: NamedGraph) -> Result<BipartiteGraph> {
    Ok(match name {
        NamedGraph::C4 => BipartiteGraph::complete(2, 2),
        NamedGraph::K33 => BipartiteGraph::complete(3, 3),
        NamedGraph::Cube => cube(),
        NamedGraph::Heawood => heawood(),
        NamedGraph::Rotunda => {
            let c = cube();
            let part = Summand {
                graph: &c,
                cycle: CUBE_FACE,
            };
            four_cycle_sum(&[part.clone(), part.clone(), part], &[])?
        }
        NamedGraph::T10 => {
            let k = BipartiteGraph::complete(3, 3);
            let part = Summand {
                graph: &k,
                cycle: [0, 3, 1, 4],
            };
            four_cycle_sum(&[part.clone(), part.clone(), part], &[])?
        }
        NamedGraph::MoebiusLadder(k) => moebius_ladder(k)?,
    })
}

/// The face `000 001 011 010` of the cube, in cube ids.
pub const CUBE_FACE: [usize; 4] = [0, 4, 1, 5];

/// Q3. Class 1 holds the even-weight bit strings `000, 011, 101, 110`
/// (ids 0..4), class 2 the odd ones `001, 010, 100, 111` (ids 4..8).
fn cube() -> BipartiteGraph {
    let even: [u32; 4] = [0b000, 0b011, 0b101, 0b110];
    let odd = [0b001, 0b010, 0b100, 0b111];
    let mut edges = Vec::new();
    for (i, &a) in even.iter().enumerate() {
        for (j, &b) in odd.iter().enumerate() {
            if (a ^ b).count_ones() == 1 {
                edges.push((i, 4 + j));
            }
        }
    }
    BipartiteGraph::new(4, 4, edges).expect("cube")
}

/// Incidence graph of the Fano plane: points `0..7`, and line `7 + i`
/// through the points `i, i + 1, i + 3` (mod 7).
fn heawood() -> BipartiteGraph {
    let edges = (0..7).flat_map(|i| [0, 1, 3].map(|d| ((i + d) % 7, 7 + i)));
    BipartiteGraph::new(7, 7, edges).expect("heawood")
}

/// The cycle `0 1 .. 4k+1` plus the chords `i, i + 2k + 1`. Position `2j`
/// gets id `j`, position `2j + 1` gets id `2k + 1 + j`.
fn moebius_ladder(k: usize) -> Result<BipartiteGraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("Moebius ladder needs k >= 1".into()));
    }
    let n = 4 * k + 2;
    let half = 2 * k + 1;
    let id = |p: usize| if p.is_multiple_of(2) { p / 2 } else { half + p / 2 };
    let rungs = (0..half).map(|i| (id(i), id(i + half)));
    let cycle = (0..n).map(|i| (id(i), id((i + 1) % n)));
    Ok(BipartiteGraph::new_merged(half, half, cycle.chain(rungs))?)
}
