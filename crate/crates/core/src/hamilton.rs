//! Hamiltonian cycles: an exact small-scale solver, and the clone/anticlone
//! partition that certifies a cycle in the last level of an IIM graph.

use std::collections::HashMap;

use crate::choice::CopyKind;
use crate::error::{IimError, Result};
use crate::graph::{Graph, VertexSet};
use crate::iim::IimGraph;

pub const HAMILTON_LIMIT: usize = 24;
pub const PARTITION_LIMIT: usize = 20;
const SEARCH_BUDGET: u64 = 50_000;

/// Every vertex exactly once and consecutive vertices (cyclically) adjacent.
pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Backtracking with degree-2 forcing under a node budget, then an exact subset
/// DP if the budget runs out. `None` is definitive.
pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > HAMILTON_LIMIT {
        return Err(IimError::SizeLimit {
            solver: "hamiltonian_cycle",
            limit: HAMILTON_LIMIT,
            n,
        });
    }
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) {
        return Ok(None);
    }
    let adj: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
    let mut path = vec![0usize];
    let mut budget = SEARCH_BUDGET;
    let found = match extend_cycle(&adj, (1u32 << n) - 1, 1, &mut path, &mut budget) {
        Some(true) => Some(path),
        Some(false) => None,
        None => cycle_by_subsets(&adj),
    };
    debug_assert!(found.as_ref().is_none_or(|c| is_hamiltonian_cycle(g, c)));
    Ok(found)
}

/// `None` when the node budget runs out.
fn extend_cycle(adj: &[u32], full: u32, visited: u32, path: &mut Vec<usize>, budget: &mut u64) -> Option<bool> {
    *budget = budget.checked_sub(1)?;
    let cur = *path.last().unwrap();
    if visited == full {
        return Some(adj[cur] & 1 != 0);
    }
    let unvisited = full & !visited;
    // an unvisited vertex needs two cycle neighbors among unvisited, cur, and 0
    let open = unvisited | (1 << cur) | 1;
    let mut forced = None;
    let mut rest = unvisited;
    while rest != 0 {
        let y = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let avail = adj[y] & open & !(1 << y);
        let deg = avail.count_ones();
        if deg < 2 {
            return Some(false);
        }
        if deg == 2 && avail & (1 << cur) != 0 && cur != 0 {
            if forced.is_some() {
                return Some(false);
            }
            forced = Some(y);
        }
    }
    let mut cand = match forced {
        Some(y) => 1 << y,
        None => adj[cur] & unvisited,
    };
    while cand != 0 {
        let y = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        path.push(y);
        match extend_cycle(adj, full, visited | (1 << y), path, budget)? {
            true => return Some(true),
            false => path.pop(),
        };
    }
    Some(false)
}

/// `reach[s]`: endpoints of paths from 0 covering exactly `{0} ∪ s`, where
/// vertex `i >= 1` is bit `i - 1`.
fn cycle_by_subsets(adj: &[u32]) -> Option<Vec<usize>> {
    let m = adj.len() - 1;
    let shifted: Vec<u32> = adj.iter().map(|a| a >> 1).collect();
    let mut reach = vec![0u32; 1 << m];
    for s in 1usize..1 << m {
        let mut bits = s as u32;
        let mut ends = 0u32;
        while bits != 0 {
            let b = bits.trailing_zeros();
            bits &= bits - 1;
            let prev = s & !(1 << b);
            let ok = if prev == 0 {
                shifted[0] >> b & 1 == 1
            } else {
                reach[prev] & shifted[b as usize + 1] != 0
            };
            if ok {
                ends |= 1 << b;
            }
        }
        reach[s] = ends;
    }
    let mut s = (1usize << m) - 1;
    let closing = reach[s] & shifted[0];
    if closing == 0 {
        return None;
    }
    let mut end = closing.trailing_zeros();
    let mut path = Vec::with_capacity(m + 1);
    loop {
        path.push(end as usize + 1);
        let prev = s & !(1 << end);
        if prev == 0 {
            break;
        }
        end = (reach[prev] & shifted[end as usize + 1]).trailing_zeros();
        s = prev;
    }
    path.push(0);
    path.reverse();
    Some(path)
}

/// Hamiltonian path inside `allowed` from `start` to `end`, by backtracking.
fn hamiltonian_path(g: &Graph, allowed: &VertexSet, start: usize, end: usize) -> Option<Vec<usize>> {
    if !allowed.contains(start) || !allowed.contains(end) || (start == end) != (allowed.len() == 1) {
        return None;
    }
    let mut path = vec![start];
    let mut left = allowed.clone();
    left.remove(start);
    walk(g, &mut left, end, &mut path).then_some(path)
}

fn walk(g: &Graph, left: &mut VertexSet, end: usize, path: &mut Vec<usize>) -> bool {
    let cur = *path.last().unwrap();
    if left.is_empty() {
        return cur == end;
    }
    for y in left.iter() {
        let need = if y == end { 1 } else { 2 };
        let deg = g.neighbors(y).intersection(left).len() + usize::from(g.has_edge(y, cur));
        if deg < need {
            return false;
        }
    }
    let next: Vec<usize> = g
        .neighbors(cur)
        .intersection(left)
        .iter()
        .filter(|&y| y != end || left.len() == 1)
        .collect();
    for y in next {
        left.remove(y);
        path.push(y);
        if walk(g, left, end, path) {
            return true;
        }
        path.pop();
        left.insert(y);
    }
    false
}

/// `v, w ∈ C_i`, `u ∈ A_{i-1}`, `x ∈ A_i` with `vu ∉ E` and `wx ∈ E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connector {
    pub v: usize,
    pub w: usize,
    pub u: usize,
    pub x: usize,
}

/// Cloned and anticloned vertices of the last level's parent graph, split into
/// `k` paired blocks. Indices wrap modulo `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamPartition {
    pub c: Vec<VertexSet>,
    pub a: Vec<VertexSet>,
    pub connectors: Vec<Connector>,
}

fn split_last_level(h: &IimGraph) -> Result<(usize, VertexSet, VertexSet)> {
    let l = h.top_level();
    if l == 0 {
        return Err(IimError::Precondition("graph has no level to partition".into()));
    }
    let prev = h.prefix_len(l - 1);
    let mut cloned = VertexSet::new(h.n());
    let mut anticloned = VertexSet::new(h.n());
    for v in 0..prev {
        match h.kind(h.copy_at_level(v, l).unwrap()) {
            CopyKind::Clone => cloned.insert(v),
            CopyKind::Anticlone => anticloned.insert(v),
            CopyKind::Original => unreachable!(),
        }
    }
    Ok((prev, cloned, anticloned))
}

fn induces_hamiltonian(g: &Graph, s: &VertexSet) -> bool {
    s.len() >= 3 && matches!(hamiltonian_cycle(&g.induced_subgraph(s).0), Ok(Some(_)))
}

impl HamPartition {
    pub fn k(&self) -> usize {
        self.c.len()
    }

    pub fn validate(&self, h: &IimGraph) -> Result<()> {
        let bad = |msg: String| Err(IimError::Precondition(msg));
        let (_, cloned, anticloned) = split_last_level(h)?;
        let g = h.graph();
        let k = self.c.len();
        if k == 0 || self.a.len() != k || self.connectors.len() != k {
            return bad(format!(
                "{} clone blocks, {} anticlone blocks, {} connectors",
                self.c.len(),
                self.a.len(),
                self.connectors.len()
            ));
        }
        for (blocks, target, name) in [(&self.c, &cloned, "clone"), (&self.a, &anticloned, "anticlone")] {
            let mut seen = VertexSet::new(h.n());
            for b in blocks {
                if !seen.is_disjoint(b) {
                    return bad(format!("{name} blocks overlap"));
                }
                seen.union_with(b);
            }
            if &seen != target {
                return bad(format!("{name} blocks do not cover the {name}d set"));
            }
        }
        for (i, ci) in self.c.iter().enumerate() {
            if !induces_hamiltonian(g, ci) {
                return bad(format!("C_{} is not Hamiltonian", i + 1));
            }
        }
        for (i, ai) in self.a.iter().enumerate() {
            if ai.len() < 3 || !g.is_independent(ai) {
                return bad(format!("A_{} must be independent with at least 3 vertices", i + 1));
            }
        }
        for (i, t) in self.connectors.iter().enumerate() {
            let prev_a = &self.a[(i + k - 1) % k];
            let ok = t.v != t.w
                && self.c[i].contains(t.v)
                && self.c[i].contains(t.w)
                && prev_a.contains(t.u)
                && self.a[i].contains(t.x)
                && !g.has_edge(t.v, t.u)
                && g.has_edge(t.w, t.x);
            if !ok {
                return bad(format!("connector {} fails its conditions", i + 1));
            }
            if t.x == self.connectors[(i + 1) % k].u {
                return bad(format!("A_{} enters and leaves at the same vertex", i + 1));
            }
        }
        Ok(())
    }
}

/// Hamiltonian path of `C ∪ C^c` from `v` to the clone of `w`, alternating
/// originals and clones along a Hamiltonian cycle of `C` when possible.
fn clone_segment(h: &IimGraph, ci: &VertexSet, v: usize, w: usize) -> Option<Vec<usize>> {
    let l = h.top_level();
    let g = h.graph();
    let clone = |a: usize| h.copy_at_level(a, l).unwrap();
    let (sub, map) = g.induced_subgraph(ci);
    if let Ok(Some(cycle)) = hamiltonian_cycle(&sub) {
        let cycle: Vec<usize> = cycle.into_iter().map(|i| map[i]).collect();
        let m = cycle.len();
        let at = cycle.iter().position(|&a| a == v)?;
        for dir in [1, m - 1] {
            let o: Vec<usize> = (0..m).map(|t| cycle[(at + dir * t) % m]).collect();
            let last = o[m - 1];
            if last != w && !g.has_edge(last, w) {
                continue;
            }
            let s = o.iter().position(|&a| a == w).unwrap();
            let mut path = vec![o[0]];
            for t in 0..m - 1 {
                path.push(clone(if t < s { o[t] } else { o[t + 1] }));
                path.push(o[t + 1]);
            }
            path.push(clone(w));
            return Some(path);
        }
    }
    let mut allowed = ci.clone();
    for a in ci.iter() {
        allowed.insert(clone(a));
    }
    hamiltonian_path(g, &allowed, v, clone(w))
}

/// Hamiltonian path of `A ∪ A^a` from `x` to the anticlone of `u`.
fn anticlone_segment(h: &IimGraph, ai: &VertexSet, x: usize, u: usize) -> Option<Vec<usize>> {
    let l = h.top_level();
    let mut allowed = ai.clone();
    for a in ai.iter() {
        allowed.insert(h.copy_at_level(a, l).unwrap());
    }
    hamiltonian_path(h.graph(), &allowed, x, h.copy_at_level(u, l).unwrap())
}

/// Joins the per-block segments into one cycle and validates it.
pub fn build_cycle_from_partition(h: &IimGraph, p: &HamPartition) -> Result<Vec<usize>> {
    p.validate(h)?;
    let k = p.k();
    let g = h.graph();
    let mut cycle = Vec::with_capacity(h.n());
    for i in 0..k {
        let t = p.connectors[i];
        let next_u = p.connectors[(i + 1) % k].u;
        let cs = clone_segment(h, &p.c[i], t.v, t.w)
            .ok_or_else(|| IimError::Validation(format!("no alternating path through C_{}", i + 1)))?;
        let as_ = anticlone_segment(h, &p.a[i], t.x, next_u)
            .ok_or_else(|| IimError::Validation(format!("no alternating path through A_{}", i + 1)))?;
        for seg in [&cs, &as_] {
            if seg.windows(2).any(|e| !g.has_edge(e[0], e[1])) {
                return Err(IimError::Validation(format!("segment {seg:?} uses a non-edge")));
            }
        }
        cycle.extend(cs);
        cycle.extend(as_);
    }
    if !is_hamiltonian_cycle(g, &cycle) {
        return Err(IimError::Validation(format!("{cycle:?} is not a Hamiltonian cycle")));
    }
    Ok(cycle)
}

/// Set partitions of `items` into exactly `k` blocks of size at least 3, with
/// blocks opened in order of their smallest element.
fn block_partitions(
    items: &[usize],
    k: usize,
    universe: usize,
    block_ok: &mut dyn FnMut(&VertexSet, bool) -> bool,
) -> Vec<Vec<VertexSet>> {
    fn rec(
        items: &[usize],
        i: usize,
        k: usize,
        blocks: &mut Vec<VertexSet>,
        universe: usize,
        block_ok: &mut dyn FnMut(&VertexSet, bool) -> bool,
        out: &mut Vec<Vec<VertexSet>>,
    ) {
        let remaining = items.len() - i;
        let short: usize = blocks.iter().map(|b| 3usize.saturating_sub(b.len())).sum();
        if short + 3 * (k - blocks.len()) > remaining {
            return;
        }
        if i == items.len() {
            if blocks.iter().all(|b| block_ok(b, true)) {
                out.push(blocks.clone());
            }
            return;
        }
        let v = items[i];
        for b in 0..blocks.len() {
            blocks[b].insert(v);
            if block_ok(&blocks[b], false) {
                rec(items, i + 1, k, blocks, universe, block_ok, out);
            }
            blocks[b].remove(v);
        }
        if blocks.len() < k {
            blocks.push(VertexSet::from_ids(universe, [v]));
            rec(items, i + 1, k, blocks, universe, block_ok, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, k, &mut Vec::new(), universe, block_ok, &mut out);
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Exhaustive search for a partition satisfying the sufficient condition whose
/// segments can actually be built. `None` is definitive.
pub fn find_ham_partition(h: &IimGraph) -> Result<Option<HamPartition>> {
    let (prev, cloned, anticloned) = split_last_level(h)?;
    if prev > PARTITION_LIMIT {
        return Err(IimError::SizeLimit {
            solver: "find_ham_partition",
            limit: PARTITION_LIMIT,
            n: prev,
        });
    }
    let g = h.graph();
    let c_items = cloned.to_vec();
    let a_items = anticloned.to_vec();
    let max_k = (c_items.len() / 3).min(a_items.len() / 3);
    let mut ham_memo: HashMap<Vec<u64>, bool> = HashMap::new();
    for k in 1..=max_k {
        let a_parts = block_partitions(&a_items, k, h.n(), &mut |b, _| g.is_independent(b));
        if a_parts.is_empty() {
            continue;
        }
        let c_parts = block_partitions(&c_items, k, h.n(), &mut |b, done| {
            !done || *ham_memo.entry(b.words().to_vec()).or_insert_with(|| induces_hamiltonian(g, b))
        });
        for cp in &c_parts {
            for ap in &a_parts {
                for perm in permutations(k) {
                    let a: Vec<VertexSet> = perm.iter().map(|&j| ap[j].clone()).collect();
                    if let Some(connectors) = choose_connectors(h, cp, &a) {
                        let p = HamPartition {
                            c: cp.clone(),
                            a,
                            connectors,
                        };
                        build_cycle_from_partition(h, &p)?;
                        return Ok(Some(p));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn choose_connectors(h: &IimGraph, c: &[VertexSet], a: &[VertexSet]) -> Option<Vec<Connector>> {
    let k = c.len();
    let g = h.graph();
    let options: Vec<Vec<Connector>> = (0..k)
        .map(|i| {
            let prev_a = &a[(i + k - 1) % k];
            let mut out = Vec::new();
            for v in c[i].iter() {
                for w in c[i].iter().filter(|&w| w != v) {
                    let xs: Vec<usize> = a[i].iter().filter(|&x| g.has_edge(w, x)).collect();
                    if xs.is_empty() {
                        continue;
                    }
                    let us: Vec<usize> = prev_a.iter().filter(|&u| !g.has_edge(v, u)).collect();
                    if us.is_empty() || clone_segment(h, &c[i], v, w).is_none() {
                        continue;
                    }
                    for &u in &us {
                        for &x in &xs {
                            out.push(Connector { v, w, u, x });
                        }
                    }
                }
            }
            out
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return None;
    }
    let mut chosen = Vec::with_capacity(k);
    pick(h, a, &options, &mut chosen).then_some(chosen)
}

fn pick(h: &IimGraph, a: &[VertexSet], options: &[Vec<Connector>], chosen: &mut Vec<Connector>) -> bool {
    let k = options.len();
    let i = chosen.len();
    if i == k {
        let (first, last) = (chosen[0], chosen[k - 1]);
        return last.x != first.u && anticlone_segment(h, &a[k - 1], last.x, first.u).is_some();
    }
    for &t in &options[i] {
        if i > 0 {
            let prev = chosen[i - 1];
            if prev.x == t.u || anticlone_segment(h, &a[i - 1], prev.x, t.u).is_none() {
                continue;
            }
        }
        chosen.push(t);
        if pick(h, a, options, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
