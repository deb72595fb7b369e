//! Built-in seed graphs addressable by name.

use crate::error::{IimError, Result};
use crate::graph::Graph;

/// Every name accepted by [`named_seed`].
pub fn seed_names() -> Vec<String> {
    let mut out: Vec<String> = (1..=8).map(|n| format!("K{n}")).collect();
    out.extend((2..=8).map(|n| format!("P{n}")));
    out.extend((3..=8).map(|n| format!("C{n}")));
    out.push("2K1".into());
    out.push("K2uK2uK1".into());
    out
}

/// `K1..K8`, `P2..P8` (vertex count), `C3..C8`, `2K1`, and `K2uK2uK1`.
pub fn named_seed(name: &str) -> Result<Graph> {
    let unknown = || IimError::Precondition(format!("unknown seed '{name}'"));
    match name {
        "2K1" => return Ok(Graph::empty(2)),
        "K2uK2uK1" => {
            return Ok(Graph::complete(2)
                .disjoint_union(&Graph::complete(2))
                .disjoint_union(&Graph::complete(1)))
        }
        _ => {}
    }
    let (family, digits) = name.split_at(name.len().min(1));
    let n: usize = digits.parse().map_err(|_| unknown())?;
    match (family, n) {
        ("K", 1..=8) => Ok(Graph::complete(n)),
        ("P", 2..=8) => Ok(Graph::path(n)),
        ("C", 3..=8) => Ok(Graph::cycle(n)),
        _ => Err(unknown()),
    }
}
