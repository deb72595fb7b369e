//! Induced subgraph search, and the clone-ladder and parity procedures that
//! locate a fixed pattern inside graphs grown from `K_n`.

use std::fmt;

use crate::choice::CopyKind;
use crate::error::{IimError, Result};
use crate::graph::{Graph, VertexSet};
use crate::iim::{IimGraph, Parity};

pub const PATTERN_LIMIT: usize = 10;

/// Pattern vertex `a` maps to host vertex `map[a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedEmbedding {
    pub map: Vec<usize>,
}

impl InducedEmbedding {
    pub fn verify(&self, host: &Graph, pattern: &Graph) -> Result<()> {
        if is_induced_embedding(host, pattern, &self.map) {
            Ok(())
        } else {
            Err(IimError::Validation(format!(
                "{self} is not an induced embedding"
            )))
        }
    }
}

impl fmt::Display for InducedEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.map.iter().enumerate().map(|(a, b)| format!("{a}:{b}")).collect();
        f.write_str(&pairs.join(","))
    }
}

/// Definition check: injective, in range, and `ab ∈ E(F) ⇔ map(a)map(b) ∈ E(H)`.
pub fn is_induced_embedding(host: &Graph, pattern: &Graph, map: &[usize]) -> bool {
    let k = pattern.n();
    if map.len() != k || map.iter().any(|&v| v >= host.n()) {
        return false;
    }
    for a in 0..k {
        for b in a + 1..k {
            if map[a] == map[b] || pattern.has_edge(a, b) != host.has_edge(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}

/// Exact induced subgraph test by backtracking over bitset candidate sets.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> Result<Option<InducedEmbedding>> {
    let k = pattern.n();
    if k > PATTERN_LIMIT {
        return Err(IimError::SizeLimit {
            solver: "contains_induced",
            limit: PATTERN_LIMIT,
            n: k,
        });
    }
    if k > host.n() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&a| std::cmp::Reverse(pattern.degree(a)));
    let mut map = vec![usize::MAX; k];
    let found = place(host, pattern, &order, 0, &mut map);
    Ok(found.then_some(InducedEmbedding { map }))
}

fn place(host: &Graph, pattern: &Graph, order: &[usize], i: usize, map: &mut [usize]) -> bool {
    if i == order.len() {
        return true;
    }
    let a = order[i];
    let mut cand = host.vertex_set();
    for &b in &order[..i] {
        let hb = map[b];
        cand.remove(hb);
        if pattern.has_edge(a, b) {
            cand.intersect_with(&host.neighbors(hb));
        } else {
            let mut non = host.neighbors(hb).complement();
            non.remove(hb);
            cand.intersect_with(&non);
        }
    }
    let need = pattern.degree(a);
    for v in cand.iter() {
        if host.degree(v) < need {
            continue;
        }
        map[a] = v;
        if place(host, pattern, order, i + 1, map) {
            return true;
        }
    }
    map[a] = usize::MAX;
    false
}

/// Pattern edges missing from `K_n`, lexicographic.
pub fn missing_edges(pattern: &Graph) -> Vec<(usize, usize)> {
    let n = pattern.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !pattern.has_edge(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Clone ladder: a base `n`-clique (role `a` played by `base[a]`), ascending
/// ladder levels after it, and the set `U` of the base plus its iterated clones
/// on those levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderWitness {
    pub base: Vec<usize>,
    pub levels: Vec<usize>,
    pub u: VertexSet,
}

impl LadderWitness {
    /// Collects `U` by copying every member at each ladder level. Validity is
    /// checked separately.
    pub fn build(h: &IimGraph, base: Vec<usize>, levels: Vec<usize>) -> Self {
        let mut u = VertexSet::from_ids(h.n(), base.iter().copied());
        for &l in &levels {
            let members = u.to_vec();
            for v in members {
                if let Some(c) = h.copy_at_level(v, l) {
                    u.insert(c);
                }
            }
        }
        Self { base, levels, u }
    }

    /// The ladder conditions, generalized from level 0 to an arbitrary base clique.
    pub fn validate(&self, h: &IimGraph) -> Result<()> {
        let fail = |condition: u8, detail: String| Err(IimError::LadderCondition { condition, detail });
        let base_top = self.base.iter().map(|&v| h.level_of(v)).max().unwrap_or(0);
        let mut prev = base_top;
        for &l in &self.levels {
            if l <= prev || l > h.top_level() {
                return fail(1, format!("level {l} does not follow {prev}"));
            }
            prev = l;
        }
        let base_set = VertexSet::from_ids(h.n(), self.base.iter().copied());
        if self.u.universe() != h.n() {
            return fail(2, "U lives on a different vertex count".into());
        }
        for v in self.u.iter() {
            if !base_set.contains(v) && !self.levels.contains(&h.level_of(v)) {
                return fail(2, format!("vertex {v} at level {} outside the ladder", h.level_of(v)));
            }
        }
        if base_set.len() != self.base.len() || !base_set.is_subset(&self.u) {
            return fail(3, "base vertices missing from U".into());
        }
        if !h.graph().is_clique(&base_set) {
            return fail(3, "base does not induce a complete graph".into());
        }
        let mut earlier = base_set;
        for &l in &self.levels {
            let mut expected = VertexSet::new(h.n());
            for v in earlier.iter() {
                let c = h.copy_at_level(v, l).unwrap();
                if h.kind(c) != CopyKind::Clone {
                    return fail(4, format!("copy {c} of U-vertex {v} at level {l} is an anticlone"));
                }
                expected.insert(c);
            }
            let actual = self.u.intersection(&h.level_set(l));
            if actual != expected {
                return fail(4, format!("U on level {l} is not exactly the clones of earlier U"));
            }
            earlier.union_with(&expected);
        }
        Ok(())
    }
}

/// Replaces the representatives of each missing edge by their clones on
/// successive ladder levels.
pub fn lemma_ladder_extract(h: &IimGraph, pattern: &Graph, w: &LadderWitness) -> Result<InducedEmbedding> {
    let n = pattern.n();
    if w.base.len() != n {
        return Err(IimError::Precondition(format!(
            "ladder base has {} vertices, pattern has {n}",
            w.base.len()
        )));
    }
    w.validate(h)?;
    let missing = missing_edges(pattern);
    if w.levels.len() < missing.len() {
        return Err(IimError::LadderCondition {
            condition: 1,
            detail: format!("{} ladder levels for {} missing edges", w.levels.len(), missing.len()),
        });
    }
    let mut reps = w.base.clone();
    for (&(c, d), &l) in missing.iter().zip(&w.levels) {
        reps[c] = h.copy_at_level(reps[c], l).unwrap();
        reps[d] = h.copy_at_level(reps[d], l).unwrap();
    }
    let e = InducedEmbedding { map: reps };
    e.verify(h.graph(), pattern)?;
    Ok(e)
}

/// `v` descends from `ancestor` and every ancestor strictly between them lies on
/// a level above `after_level`.
pub fn is_eligible_descendant(h: &IimGraph, v: usize, ancestor: usize, after_level: usize) -> bool {
    let lineage = h.lineage(v);
    match lineage.iter().position(|&u| u == ancestor) {
        Some(pos) if pos > 0 => h.level_of(lineage[pos - 1]) > after_level,
        _ => false,
    }
}

/// Parity of every eligible descendant of `a` (relative to `a`), by forward
/// propagation over the levels.
fn eligible_parities(h: &IimGraph, a: usize, after_level: usize) -> Vec<Option<Parity>> {
    let mut parity: Vec<Option<Parity>> = vec![None; h.n()];
    for l in h.level_of(a) + 1..=h.top_level() {
        for v in h.level_range(l) {
            let p = h.precopy(v).unwrap();
            let flip = h.kind(v) == CopyKind::Anticlone;
            let base = if p == a {
                (l > after_level).then_some(Parity::Even)
            } else {
                parity[p]
            };
            parity[v] = base.map(|b| match (b, flip) {
                (b, false) => b,
                (Parity::Even, true) => Parity::Odd,
                (Parity::Odd, true) => Parity::Even,
            });
        }
    }
    parity
}

/// The pair that could not be separated, with the levels after `after_level`
/// on which all eligible descendants of each endpoint have odd parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedPair {
    pub edge: (usize, usize),
    pub representatives: (usize, usize),
    pub after_level: usize,
    pub odd_levels: [Vec<usize>; 2],
}

impl BlockedPair {
    /// Rechecks the certificate by walking each vertex's lineage.
    pub fn verify(&self, h: &IimGraph) -> Result<()> {
        let (ai, aj) = self.representatives;
        let even_at = |a: usize, l: usize| {
            h.level_range(l).any(|v| {
                is_eligible_descendant(h, v, a, self.after_level)
                    && h.anticlone_parity(v, a) == Some(Parity::Even)
            })
        };
        let mut odd = [Vec::new(), Vec::new()];
        for l in self.after_level + 1..=h.top_level() {
            let (ei, ej) = (even_at(ai, l), even_at(aj, l));
            if ei && ej {
                return Err(IimError::Validation(format!(
                    "level {l} has even-parity descendants of both {ai} and {aj}"
                )));
            }
            if !ei {
                odd[0].push(l);
            }
            if !ej {
                odd[1].push(l);
            }
        }
        if odd != self.odd_levels {
            return Err(IimError::Validation("odd-level sets do not match".into()));
        }
        Ok(())
    }
}

/// How far the parity procedure got on a graph too shallow to finish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressState {
    pub removed: Vec<(usize, usize)>,
    pub representatives: Vec<usize>,
    pub last_level: usize,
    pub blocked: BlockedPair,
    /// Nonzero odd levels the fallback would need on one side.
    pub threshold: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducedRoute {
    /// Every missing edge was separated by same-level even-parity descendants.
    Parity,
    /// A blocked pair had enough odd levels; the ladder rooted at the first
    /// anticlone of `endpoint`'s representative produced the embedding.
    Ladder { endpoint: usize, witness: LadderWitness },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducedOutcome {
    Embedded { embedding: InducedEmbedding, route: InducedRoute },
    Progress(ProgressState),
}

/// Finds `pattern` in `h` (grown from `K_n`, `n = |V(pattern)|`) by repeatedly
/// swapping the endpoints of the next missing edge for same-level even-parity
/// descendants, falling back to a clone ladder when one side is odd on enough
/// levels.
pub fn find_induced_via_parity(h: &IimGraph, pattern: &Graph) -> Result<InducedOutcome> {
    let n = pattern.n();
    if h.n0() != n || h.seed_graph() != Graph::complete(n) {
        return Err(IimError::Precondition(format!(
            "level 0 must be K_{n} for a pattern on {n} vertices"
        )));
    }
    let missing = missing_edges(pattern);
    let threshold = n + missing.len();
    let mut reps: Vec<usize> = (0..n).collect();
    let mut last = 0usize;
    let mut removed = Vec::new();

    for &(i, j) in &missing {
        let pi = eligible_parities(h, reps[i], last);
        let pj = eligible_parities(h, reps[j], last);
        let even_in = |par: &[Option<Parity>], l: usize| h.level_range(l).find(|&v| par[v] == Some(Parity::Even));
        let mut odd = [Vec::new(), Vec::new()];
        let mut swapped = false;
        for l in last + 1..=h.top_level() {
            match (even_in(&pi, l), even_in(&pj, l)) {
                (Some(yi), Some(yj)) => {
                    reps[i] = yi;
                    reps[j] = yj;
                    last = l;
                    swapped = true;
                    break;
                }
                (ei, ej) => {
                    if ei.is_none() {
                        odd[0].push(l);
                    }
                    if ej.is_none() {
                        odd[1].push(l);
                    }
                }
            }
        }
        if swapped {
            removed.push((i, j));
            continue;
        }
        let blocked = BlockedPair {
            edge: (i, j),
            representatives: (reps[i], reps[j]),
            after_level: last,
            odd_levels: odd,
        };
        for (side, endpoint) in [(0, i), (1, j)] {
            let levels = &blocked.odd_levels[side];
            if levels.len() >= threshold {
                let z = h.copy_at_level(reps[endpoint], levels[0]).unwrap();
                let mut base = vec![z];
                base.extend(levels[1..n].iter().map(|&l| h.copy_at_level(z, l).unwrap()));
                let witness = LadderWitness::build(h, base, levels[n..threshold].to_vec());
                let embedding = lemma_ladder_extract(h, pattern, &witness)?;
                return Ok(InducedOutcome::Embedded {
                    embedding,
                    route: InducedRoute::Ladder { endpoint, witness },
                });
            }
        }
        return Ok(InducedOutcome::Progress(ProgressState {
            removed,
            representatives: reps,
            last_level: last,
            blocked,
            threshold,
        }));
    }
    let embedding = InducedEmbedding { map: reps };
    embedding.verify(h.graph(), pattern)?;
    Ok(InducedOutcome::Embedded {
        embedding,
        route: InducedRoute::Parity,
    })
}
