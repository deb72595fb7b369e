//! Exact canonical keys for small graphs.
//!
//! Individualization-refinement: at each node the coloring is refined to a stable
//! ordered partition, then each vertex of the first non-singleton cell is
//! individualized in turn. Leaves are discrete partitions; the key is the smallest
//! upper-triangle adjacency string among them. Swapping two twins in the target
//! cell is an automorphism fixing the current partition, so one twin per class is
//! enough.

use std::collections::BTreeMap;

use crate::error::{IimError, Result};
use crate::graph::Graph;

pub const DEFAULT_CANON_LIMIT: usize = 12;

pub fn canonical_key(g: &Graph) -> Result<Vec<u8>> {
    canonical_key_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_key_with_limit(g: &Graph, limit: usize) -> Result<Vec<u8>> {
    let n = g.n();
    if n > limit {
        return Err(IimError::SizeLimit {
            solver: "canonical_key",
            limit,
            n,
        });
    }
    let mut best: Option<Vec<bool>> = None;
    search(g, refine(g, vec![0; n]), &mut best);
    let best = best.unwrap_or_default();

    let mut key = Vec::with_capacity(2 + best.len().div_ceil(8));
    key.extend_from_slice(&(n as u16).to_le_bytes());
    for chunk in best.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            byte |= (b as u8) << i;
        }
        key.push(byte);
    }
    Ok(key)
}

/// Refines an ordered coloring until stable. New colors are ranks of
/// `(old color, sorted neighbor colors)`, so the old cell order is kept.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &sigs {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let after = ranks.len();
        if after == classes {
            return renumber(&colors);
        }
        classes = after;
        colors = next;
    }
}

fn renumber(colors: &[usize]) -> Vec<usize> {
    let mut distinct = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors
        .iter()
        .map(|c| distinct.binary_search(c).unwrap())
        .collect()
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

fn are_twins(g: &Graph, u: usize, w: usize) -> bool {
    let mut a = g.neighbors(u);
    let mut b = g.neighbors(w);
    a.remove(w);
    b.remove(u);
    a == b
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<bool>>) {
    let n = g.n();
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
        let mut perm = vec![0; n];
        for v in 0..n {
            perm[colors[v]] = v;
        }
        let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for p in 0..n {
            for i in 0..p {
                bits.push(g.has_edge(perm[i], perm[p]));
            }
        }
        if best.as_ref().is_none_or(|b| bits < *b) {
            *best = Some(bits);
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for v in (0..n).filter(|&v| colors[v] == target) {
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let split: Vec<usize> = (0..n)
            .map(|u| 2 * colors[u] + usize::from(u != v))
            .collect();
        search(g, refine(g, split), best);
    }
}
