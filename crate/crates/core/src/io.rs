//! Edge-list text, DOT export, and the genealogy JSON document.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::choice::{ChoiceSequence, CopyKind, LevelChoice};
use crate::error::{IimError, Result};
use crate::graph::Graph;
use crate::iim::{iim_generate, IimGraph};

/// `n m` on the first line, then one `u v` line per edge.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses [`write_edge_list`] output. Blank lines and `#` comments are ignored;
/// errors carry 1-based line numbers.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let err = |line: usize, msg: String| IimError::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(line, format!("expected two integers, found '{l}'")));
        }
        let parse = |f: &str| f.parse::<usize>().map_err(|_| err(line, format!("'{f}' is not a vertex count or id")));
        Ok((parse(fields[0])?, parse(fields[1])?))
    };
    let (first, header) = lines.next().ok_or_else(|| err(1, "missing 'n m' header".into()))?;
    let (n, m) = pair(first, header)?;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    let mut last = first;
    for (line, l) in lines {
        last = line;
        let (u, v) = pair(line, l)?;
        if u >= n || v >= n {
            return Err(err(line, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(err(line, format!("self-loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(last, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::new(n, &edges)
}

/// Undirected DOT. Vertices of an [`IimGraph`] are labelled with their level and
/// copy kind when `h` is given.
pub fn to_dot(g: &Graph, h: Option<&IimGraph>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        match h {
            Some(h) => {
                let shape = match h.kind(v) {
                    CopyKind::Original => "box",
                    CopyKind::Clone => "ellipse",
                    CopyKind::Anticlone => "diamond",
                };
                writeln!(out, "  {v} [label=\"{v} L{}\", shape={shape}];", h.level_of(v)).unwrap();
            }
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenealogyEntry {
    pub kind: CopyKind,
    pub precopy: Option<usize>,
}

/// `{n0, choices, levels, genealogy, edges}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenealogyDocument {
    pub n0: usize,
    pub choices: String,
    pub levels: Vec<usize>,
    pub genealogy: Vec<GenealogyEntry>,
    pub edges: Vec<(usize, usize)>,
}

impl GenealogyDocument {
    pub fn from_iim(h: &IimGraph) -> Self {
        Self {
            n0: h.n0(),
            choices: h.choices().to_string(),
            levels: (0..h.n()).map(|v| h.level_of(v)).collect(),
            genealogy: (0..h.n())
                .map(|v| GenealogyEntry {
                    kind: h.kind(v),
                    precopy: h.precopy(v),
                })
                .collect(),
            edges: h.graph().edges().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| IimError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }

    /// Regrows the graph from the level-0 edges and the recorded copy kinds,
    /// then checks that every stored field matches.
    pub fn to_iim(&self) -> Result<IimGraph> {
        let n = self.genealogy.len();
        let n0 = self.n0;
        if n0 == 0 || !n.is_multiple_of(n0) || !(n / n0).is_power_of_two() || self.levels.len() != n {
            return Err(IimError::Validation(format!("{n} vertices cannot hold levels over n0 = {n0}")));
        }
        let inner: Vec<(usize, usize)> = self.edges.iter().copied().filter(|&(u, v)| u < n0 && v < n0).collect();
        let seed = Graph::new(n0, &inner)?;
        let mut levels = Vec::new();
        let mut start = n0;
        while start < n {
            levels.push(LevelChoice::from_bits(
                self.genealogy[start..2 * start]
                    .iter()
                    .map(|e| e.kind == CopyKind::Anticlone)
                    .collect(),
            ));
            start *= 2;
        }
        let h = iim_generate(&seed, &ChoiceSequence::new(levels))?;
        if &GenealogyDocument::from_iim(&h) != self {
            return Err(IimError::Validation("document disagrees with the regrown graph".into()));
        }
        Ok(h)
    }
}
