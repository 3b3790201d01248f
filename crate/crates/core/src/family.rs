//! `family:params` graph specifications, e.g. `cycle:5`, `bipartite:8,8`,
//! `random:40,0.5,7`, `domsharp:2,2,6`, `file:g.txt`.

use crate::error::{Error, Result};
use crate::graph::{self, Graph, RetractionMap};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    /// `leaves` leaves around one centre.
    Star { leaves: usize },
    Complete { n: usize },
    Hypercube { d: usize },
    Multipartite { sizes: Vec<usize> },
    Random { n: usize, p: f64, seed: u64 },
    Tree { n: usize, seed: u64 },
    Webbed { n: usize, seed: u64 },
    Paley { q: usize },
    Split { m: usize, r: usize },
    Domsharp { t: usize, m: usize, r: usize },
    /// Cartesian product of paths.
    Grid { sizes: Vec<usize> },
    File { path: String },
}

pub const FAMILY_NAMES: &[&str] = &[
    "path", "cycle", "star", "complete", "hypercube", "multipartite", "bipartite", "random", "tree", "webbed", "paley", "split",
    "domsharp", "grid", "file",
];

fn bad(text: &str, why: impl fmt::Display) -> Error {
    Error::Parse { line: 1, message: format!("graph spec {text:?}: {why}") }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(text: &str) -> Result<Family> {
        let (name, params) = text.split_once(':').unwrap_or((text, ""));
        if name == "file" {
            return match params {
                "" => Err(bad(text, "missing path")),
                p => Ok(Family::File { path: p.into() }),
            };
        }
        let fields: Vec<&str> = if params.is_empty() { Vec::new() } else { params.split([',', 'x']).map(str::trim).collect() };
        let uint = |i: usize| -> Result<usize> {
            let f = fields.get(i).ok_or_else(|| bad(text, format!("missing parameter {}", i + 1)))?;
            f.parse().map_err(|_| bad(text, format!("{f:?} is not a nonnegative integer")))
        };
        let arity = match name {
            "path" | "cycle" | "star" | "complete" | "hypercube" | "paley" => Some(1),
            "bipartite" | "tree" | "webbed" | "split" => Some(2),
            "random" | "domsharp" => Some(3),
            "multipartite" | "grid" => None,
            _ => return Err(bad(text, format!("unknown family; expected one of {}", FAMILY_NAMES.join(", ")))),
        };
        match arity {
            Some(k) if fields.len() != k => return Err(bad(text, format!("{name} takes {k} parameters, got {}", fields.len()))),
            None if fields.is_empty() => return Err(bad(text, "empty size list")),
            _ => {}
        }
        let list = || (0..fields.len()).map(uint).collect::<Result<Vec<usize>>>();
        let fam = match name {
            "path" => Family::Path { n: uint(0)? },
            "cycle" => Family::Cycle { n: uint(0)? },
            "star" => Family::Star { leaves: uint(0)? },
            "complete" => Family::Complete { n: uint(0)? },
            "hypercube" => Family::Hypercube { d: uint(0)? },
            "paley" => Family::Paley { q: uint(0)? },
            "multipartite" | "bipartite" => Family::Multipartite { sizes: list()? },
            "grid" => Family::Grid { sizes: list()? },
            "tree" => Family::Tree { n: uint(0)?, seed: uint(1)? as u64 },
            "webbed" => Family::Webbed { n: uint(0)?, seed: uint(1)? as u64 },
            "split" => Family::Split { m: uint(0)?, r: uint(1)? },
            "domsharp" => Family::Domsharp { t: uint(0)?, m: uint(1)?, r: uint(2)? },
            _ => {
                let p: f64 = fields[1].parse().map_err(|_| bad(text, "edge probability is not a number"))?;
                Family::Random { n: uint(0)?, p, seed: uint(2)? as u64 }
            }
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[usize]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Star { leaves } => write!(f, "star:{leaves}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::Hypercube { d } => write!(f, "hypercube:{d}"),
            Family::Multipartite { sizes } => write!(f, "multipartite:{}", join(sizes)),
            Family::Random { n, p, seed } => write!(f, "random:{n},{p},{seed}"),
            Family::Tree { n, seed } => write!(f, "tree:{n},{seed}"),
            Family::Webbed { n, seed } => write!(f, "webbed:{n},{seed}"),
            Family::Paley { q } => write!(f, "paley:{q}"),
            Family::Split { m, r } => write!(f, "split:{m},{r}"),
            Family::Domsharp { t, m, r } => write!(f, "domsharp:{t},{m},{r}"),
            Family::Grid { sizes } => write!(f, "grid:{}", join(sizes)),
            Family::File { path } => write!(f, "file:{path}"),
        }
    }
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Family::Path { n } => graph::path(*n),
            Family::Cycle { n } => graph::cycle(*n),
            Family::Star { leaves } => graph::star(*leaves),
            Family::Complete { n } => graph::complete(*n),
            Family::Hypercube { d } => graph::hypercube(*d),
            Family::Multipartite { sizes } => graph::complete_multipartite(sizes),
            Family::Random { n, p, seed } => graph::random(*n, *p, *seed),
            Family::Tree { n, seed } => graph::random_tree(*n, *seed),
            Family::Webbed { n, seed } => Ok(graph::webbed_tree(*n, *seed)?.0),
            Family::Paley { q } => graph::paley(*q),
            Family::Split { m, r } => Ok(graph::split_graph_construction(*m, *r)?.0),
            Family::Domsharp { t, m, r } => Ok(graph::domination_sharp_construction(*t, *m, *r)?.0),
            Family::Grid { sizes } => graph::path_product(sizes),
            Family::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
                Graph::from_text(&text)
            }
        }
    }

    /// Retraction onto a hypercube: every factor of a grid collapses onto its
    /// first edge.
    pub fn cube_retraction(&self) -> Option<RetractionMap> {
        match self {
            Family::Grid { sizes } if sizes.iter().all(|&s| s >= 2) => {
                graph::product_retraction(sizes, &vec![(0, 1); sizes.len()]).ok()
            }
            _ => None,
        }
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    text.parse::<Family>()?.build()
}
