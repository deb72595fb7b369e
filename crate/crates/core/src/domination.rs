//! Dominating and dual dominating sets.

use std::time::Instant;

use crate::choice::CopyKind;
use crate::enumerate::{tally_enumeration, tally_source, RunConfig, Source};
use crate::error::{IimError, Result};
use crate::graph::{Graph, VertexSet};
use crate::iim::IimGraph;
use crate::report::{graph_label, ReportHeader, VerificationReport};

pub const DEFAULT_DOMINATION_LIMIT: usize = 40;

/// A dominating set with a per-vertex certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingSetResult {
    pub set: VertexSet,
    pub size: usize,
    pub is_dual: bool,
    /// For each vertex, a member of `set` in its closed neighborhood.
    pub dominator: Vec<usize>,
    /// For each vertex, a member of `set` other than itself and not adjacent to
    /// it; present iff `is_dual`.
    pub non_neighbor: Option<Vec<usize>>,
}

impl DominatingSetResult {
    /// Recomputes the certificate against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.size != self.set.len() || self.dominator.len() != g.n() {
            return Err(IimError::Validation("certificate has wrong shape".into()));
        }
        for v in 0..g.n() {
            let d = self.dominator[v];
            if !self.set.contains(d) || (d != v && !g.has_edge(d, v)) {
                return Err(IimError::Validation(format!(
                    "vertex {v} is not dominated by recorded {d}"
                )));
            }
        }
        match (&self.non_neighbor, self.is_dual) {
            (Some(w), true) => {
                if w.len() != g.n() {
                    return Err(IimError::Validation("non-neighbor witnesses have wrong shape".into()));
                }
                for (v, &wv) in w.iter().enumerate() {
                    if !self.set.contains(wv) || wv == v || g.has_edge(v, wv) {
                        return Err(IimError::Validation(format!(
                            "vertex {v} has no valid non-neighbor witness"
                        )));
                    }
                }
                Ok(())
            }
            (None, false) => Ok(()),
            _ => Err(IimError::Validation("dual flag and witnesses disagree".into())),
        }
    }
}

fn dominator_of(g: &Graph, d: &VertexSet, v: usize) -> Option<usize> {
    if d.contains(v) {
        Some(v)
    } else {
        g.neighbors(v).intersection(d).first()
    }
}

fn non_neighbor_of(g: &Graph, d: &VertexSet, v: usize) -> Option<usize> {
    let mut cand = d.difference(&g.neighbors(v));
    cand.remove(v);
    cand.first()
}

/// Builds the certificate for `d`, or `None` when `d` does not dominate `g`.
pub fn certify(g: &Graph, d: &VertexSet) -> Option<DominatingSetResult> {
    let dominator: Option<Vec<usize>> = (0..g.n()).map(|v| dominator_of(g, d, v)).collect();
    let dominator = dominator?;
    let non_neighbor: Option<Vec<usize>> = (0..g.n()).map(|v| non_neighbor_of(g, d, v)).collect();
    Some(DominatingSetResult {
        set: d.clone(),
        size: d.len(),
        is_dual: non_neighbor.is_some(),
        dominator,
        non_neighbor,
    })
}

pub fn is_dominating(g: &Graph, d: &VertexSet) -> bool {
    (0..g.n()).all(|v| dominator_of(g, d, v).is_some())
}

/// `d` dominates `g` and every vertex has some `w` in `d`, `w != v`, `vw` not an edge.
pub fn is_dual_dominating(g: &Graph, d: &VertexSet) -> bool {
    is_dominating(g, d) && (0..g.n()).all(|v| non_neighbor_of(g, d, v).is_some())
}

pub fn domination_number(g: &Graph) -> Result<DominatingSetResult> {
    domination_number_with_limit(g, DEFAULT_DOMINATION_LIMIT)
}

/// Exact minimum dominating set by branch and bound.
pub fn domination_number_with_limit(g: &Graph, limit: usize) -> Result<DominatingSetResult> {
    let n = g.n();
    if n > limit.min(64) {
        return Err(IimError::SizeLimit {
            solver: "domination_number",
            limit: limit.min(64),
            n,
        });
    }
    let closed: Vec<u64> = (0..n)
        .map(|v| {
            g.neighbors(v).iter().fold(1u64 << v, |m, u| m | 1u64 << u)
        })
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    let mut greedy = 0u64;
    let mut dominated = 0u64;
    while dominated != full {
        let w = (0..n)
            .max_by_key(|&w| ((closed[w] & !dominated).count_ones(), std::cmp::Reverse(w)))
            .unwrap();
        greedy |= 1 << w;
        dominated |= closed[w];
    }
    let mut bb = Bb {
        closed: &closed,
        full,
        best: greedy,
        best_size: greedy.count_ones(),
    };
    bb.search(0, 0, 0);
    let set = VertexSet::from_ids(n, (0..n).filter(|&v| bb.best >> v & 1 == 1));
    Ok(certify(g, &set).expect("solver output dominates"))
}

struct Bb<'a> {
    closed: &'a [u64],
    full: u64,
    best: u64,
    best_size: u32,
}

impl Bb<'_> {
    fn search(&mut self, chosen: u64, dominated: u64, excluded: u64) {
        let size = chosen.count_ones();
        if dominated == self.full {
            if size < self.best_size {
                self.best = chosen;
                self.best_size = size;
            }
            return;
        }
        if size + 1 >= self.best_size {
            return;
        }
        let undominated = self.full & !dominated;
        let allowed = self.full & !excluded;

        let mut max_cover = 0;
        let mut a = allowed;
        while a != 0 {
            let w = a.trailing_zeros() as usize;
            a &= a - 1;
            max_cover = max_cover.max((self.closed[w] & undominated).count_ones());
        }
        if max_cover == 0 {
            return;
        }
        if size + undominated.count_ones().div_ceil(max_cover) >= self.best_size {
            return;
        }

        // branch on the undominated vertex with the fewest available dominators
        let mut pick = None;
        let mut fewest = u32::MAX;
        let mut u = undominated;
        while u != 0 {
            let v = u.trailing_zeros() as usize;
            u &= u - 1;
            let c = (self.closed[v] & allowed).count_ones();
            if c < fewest {
                fewest = c;
                pick = Some(v);
            }
        }
        let v = pick.unwrap();
        if fewest == 0 {
            return;
        }
        let mut cands: Vec<usize> = (0..64)
            .filter(|&w| (self.closed[v] & allowed) >> w & 1 == 1)
            .collect();
        cands.sort_by_key(|&w| std::cmp::Reverse((self.closed[w] & undominated).count_ones()));
        let mut excl = excluded;
        for w in cands {
            self.search(chosen | 1 << w, dominated | self.closed[w], excl);
            excl |= 1 << w;
        }
    }
}

/// `b(G)`: fewest common neighbors over non-adjacent pairs, with a witness pair.
pub fn b_of_g(g: &Graph) -> Result<(usize, (usize, usize))> {
    let mut best: Option<(usize, (usize, usize))> = None;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let c = g.neighbors(u).intersection(&g.neighbors(v)).len();
            if best.is_none_or(|(b, _)| c < b) {
                best = Some((c, (u, v)));
            }
        }
    }
    best.ok_or(IimError::CompleteGraph)
}

/// Checks that a dual dominating set of `g0` stays dominating and dual in every
/// member of `IIM_steps(g0)`.
pub fn dual_dominating_persistence(
    g0: &Graph,
    d: &VertexSet,
    steps: usize,
    cfg: &RunConfig,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if !is_dual_dominating(g0, d) {
        return Err(IimError::Precondition(format!(
            "{:?} is not dual dominating in the seed graph",
            d.to_vec()
        )));
    }
    let tally = tally_enumeration(g0, steps, cfg, |seq, h, t| {
        t.count();
        let lifted = VertexSet::from_ids(h.n(), d.iter());
        if !is_dominating(h.graph(), &lifted) {
            t.violation(seq.to_string(), "set no longer dominates".into());
        } else if !is_dual_dominating(h.graph(), &lifted) {
            t.violation(seq.to_string(), "set no longer dual".into());
        }
    })?;
    let header = ReportHeader::new("dual-persistence", &graph_label(g0), steps)
        .bound(d.len() as f64)
        .param("set", d.to_vec());
    Ok(tally.into_report(header, started))
}

/// Checks `dom(H) <= dom(g0) + b(g0) + 3` over `IIM_steps(g0)`; needs `dom(g0) >= 2`.
pub fn verify_domination_bound_general(
    g0: &Graph,
    steps: usize,
    source: &Source,
    cfg: &RunConfig,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let dom0 = domination_number(g0)?.size;
    if dom0 < 2 {
        return Err(IimError::Precondition(format!(
            "seed domination number {dom0} is below 2"
        )));
    }
    let (b, pair) = b_of_g(g0)?;
    let bound = dom0 + b + 3;
    let tally = tally_source(g0, steps, source, cfg, |seq, h, t| {
        match domination_number(h.graph()) {
            Ok(r) => {
                t.observe(r.size as f64, || seq.to_string());
                if r.size > bound {
                    t.violation(seq.to_string(), format!("dom {} exceeds {bound}", r.size));
                }
            }
            Err(_) => t.skip(),
        }
    })?;
    let header = ReportHeader::new("domination-general", &graph_label(g0), steps)
        .bound(bound as f64)
        .param("dom_seed", dom0)
        .param("b", b)
        .param("b_pair", vec![pair.0, pair.1]);
    Ok(tally.into_report(source.describe(header), started))
}

/// Output of the constructive dual dominating set for graphs grown from `K_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnConstruction {
    pub result: DominatingSetResult,
    /// First level containing an anticlone (absolute).
    pub first_anticlone_level: usize,
    pub a_l: usize,
    /// `4` when `a_l = 0`, else `a_l + 3`; `2` for `K_1` anticloned at once.
    pub bound: usize,
    /// Set when the seed was `K_1` cloned at step one and `H_1 = K_2` served as
    /// the base.
    pub rebased: bool,
}

/// Builds `{v_0, v_{l-1}, x, y}` (no level-0 anticlone at level `l`) or
/// `{v_0, v_{l-1}, x} ∪ U` and certifies it against `h`.
pub fn construct_dominating_set_kn(h: &IimGraph) -> Result<KnConstruction> {
    let n0 = h.n0();
    if n0 == 0 || h.seed_graph() != Graph::complete(n0) {
        return Err(IimError::Precondition("seed graph must be complete".into()));
    }
    let (level, _) = h.a_l_count()?;
    let kind_at = |v: usize| h.kind(h.copy_at_level(v, level).unwrap());

    let mut set = VertexSet::new(h.n());
    let (a_l, bound, rebased) = if n0 == 1 && level == 1 {
        set.insert(0);
        set.insert(1);
        (1, 2, false)
    } else {
        let base = usize::from(n0 == 1);
        let base_len = h.prefix_len(base);
        let rel = level - base;

        let mut chain = vec![0usize];
        for j in 1..rel {
            let next = h.copy_at_level(chain[j - 1], base + j).unwrap();
            debug_assert_eq!(h.kind(next), CopyKind::Clone);
            chain.push(next);
        }
        set.insert(chain[0]);
        set.insert(chain[rel - 1]);
        if rel >= 2 {
            set.insert(h.copy_at_level(1, base + 1).unwrap());
        }
        let u: Vec<usize> = (0..base_len)
            .filter(|&v| kind_at(v) == CopyKind::Anticlone)
            .map(|v| h.copy_at_level(v, level).unwrap())
            .collect();
        if u.is_empty() {
            let y = h
                .level_range(level)
                .find(|&w| h.kind(w) == CopyKind::Anticlone)
                .unwrap();
            set.insert(y);
            (0, 4, base == 1)
        } else {
            for &w in &u {
                set.insert(w);
            }
            (u.len(), u.len() + 3, base == 1)
        }
    };

    let result = certify(h.graph(), &set).ok_or_else(|| {
        IimError::Validation(format!("constructed set {:?} does not dominate", set.to_vec()))
    })?;
    if result.size > bound {
        return Err(IimError::Validation(format!(
            "constructed set has {} vertices, bound {bound}",
            result.size
        )));
    }
    Ok(KnConstruction {
        result,
        first_anticlone_level: level,
        a_l,
        bound,
        rebased,
    })
}

/// Over `IIM_steps(K_n)`: exact `dom(H)` within the `a_l`-dependent bound and
/// the construction certifies, for every member with an anticlone.
pub fn verify_domination_kn(n: usize, steps: usize, source: &Source, cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let g0 = Graph::complete(n);
    let tally = tally_source(&g0, steps, source, cfg, |seq, h, t| {
        let c = match construct_dominating_set_kn(h) {
            Ok(c) => c,
            Err(IimError::NoAnticlone) => return t.skip(),
            Err(e) => return t.violation(seq.to_string(), format!("construction failed: {e}")),
        };
        if !c.result.is_dual {
            t.violation(seq.to_string(), "constructed set is not dual".into());
        }
        match domination_number(h.graph()) {
            Ok(r) => {
                t.observe(r.size as f64, || seq.to_string());
                if r.size > c.bound {
                    t.violation(
                        seq.to_string(),
                        format!("dom {} exceeds bound {} (a_l = {})", r.size, c.bound, c.a_l),
                    );
                }
            }
            Err(e) => t.violation(seq.to_string(), e.to_string()),
        }
    })?;
    let header = ReportHeader::new("domination-kn", &graph_label(&g0), steps);
    Ok(tally.into_report(source.describe(header), started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::{ChoiceSequence, LevelChoice};
    use crate::iim::iim_generate;

    fn brute_dom(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| is_dominating(g, &VertexSet::from_ids(n, (0..n).filter(|&v| m >> v & 1 == 1))))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn domination_examples() {
        for n in 1..6 {
            assert_eq!(domination_number(&Graph::complete(n)).unwrap().size, 1);
        }
        assert_eq!(domination_number(&Graph::path(4)).unwrap().size, 2);
        assert_eq!(domination_number(&Graph::cycle(6)).unwrap().size, 2);
        assert!(domination_number(&Graph::empty(41)).is_err());
    }

    #[test]
    fn exact_matches_brute_force() {
        let mut state = 12345u64;
        for _ in 0..60 {
            let n = 1 + (state % 13) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    if state >> 61 < 3 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let r = domination_number(&g).unwrap();
            r.validate(&g).unwrap();
            assert_eq!(r.size, brute_dom(&g), "{edges:?}");
        }
    }

    #[test]
    fn dual_examples() {
        let k4 = Graph::complete(4);
        assert!(!is_dual_dominating(&k4, &VertexSet::from_ids(4, [2])));
        assert!(is_dual_dominating(&Graph::empty(2), &VertexSet::full(2)));
        assert!(!is_dual_dominating(&Graph::path(4), &VertexSet::from_ids(4, [1, 2])));
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_of_g(&Graph::cycle(4)).unwrap().0, 2);
        assert_eq!(b_of_g(&Graph::cycle(5)).unwrap().0, 1);
        assert_eq!(b_of_g(&Graph::empty(2)).unwrap(), (0, (0, 1)));
        assert_eq!(b_of_g(&Graph::complete(3)), Err(IimError::CompleteGraph));
    }

    #[test]
    fn persistence_examples() {
        let cfg = RunConfig::single_threaded();
        let r = dual_dominating_persistence(&Graph::empty(2), &VertexSet::full(2), 2, &cfg).unwrap();
        assert!(r.passed);
        assert_eq!(r.checked, 64);
        assert!(dual_dominating_persistence(&Graph::path(4), &VertexSet::from_ids(4, [1, 2]), 1, &cfg).is_err());
        let c5 = Graph::cycle(5);
        let d = VertexSet::from_ids(5, [0, 1, 3]);
        assert!(is_dual_dominating(&c5, &d));
        let r = dual_dominating_persistence(&c5, &d, 1, &cfg).unwrap();
        assert!(r.passed && r.checked == 32);
    }

    #[test]
    fn general_bound_examples() {
        let cfg = RunConfig::single_threaded();
        let r = verify_domination_bound_general(&Graph::path(4), 1, &Source::Exhaustive, &cfg).unwrap();
        assert!(r.passed);
        assert_eq!(r.bound, Some(5.0));
        assert_eq!(r.checked, 16);
        let r = verify_domination_bound_general(&Graph::cycle(5), 1, &Source::Exhaustive, &cfg).unwrap();
        assert!(r.passed);
        assert_eq!(r.bound, Some(6.0));
        assert!(verify_domination_bound_general(&Graph::complete(3), 1, &Source::Exhaustive, &cfg).is_err());
    }

    #[test]
    fn kn_construction_examples() {
        let k3 = Graph::complete(3);
        let seq = ChoiceSequence::new(vec![LevelChoice::all_clone(3), LevelChoice::all_anticlone(6)]);
        let h = iim_generate(&k3, &seq).unwrap();
        let c = construct_dominating_set_kn(&h).unwrap();
        assert_eq!((c.a_l, c.bound), (3, 6));
        assert!(c.result.size <= 6 && c.result.is_dual);
        c.result.validate(h.graph()).unwrap();

        let seq = ChoiceSequence::new(vec![
            LevelChoice::all_clone(3),
            LevelChoice::anticloning(6, [3, 4, 5]),
        ]);
        let h = iim_generate(&k3, &seq).unwrap();
        let c = construct_dominating_set_kn(&h).unwrap();
        assert_eq!((c.a_l, c.result.size), (0, 4));

        let h = iim_generate(&Graph::complete(1), &ChoiceSequence::all_anticlone(1, 1)).unwrap();
        let c = construct_dominating_set_kn(&h).unwrap();
        assert_eq!(c.result.set.to_vec(), vec![0, 1]);
        assert!(c.result.is_dual);

        let h = iim_generate(&k3, &ChoiceSequence::all_clone(3, 2)).unwrap();
        assert_eq!(construct_dominating_set_kn(&h), Err(IimError::NoAnticlone));
    }

    #[test]
    fn kn_construction_from_k1_rebases() {
        let cfg = RunConfig::single_threaded();
        let r = verify_domination_kn(1, 3, &Source::Exhaustive, &cfg).unwrap();
        assert!(r.passed, "{:?}", r.violations);
        let r = verify_domination_kn(2, 2, &Source::Exhaustive, &cfg).unwrap();
        assert!(r.passed, "{:?}", r.violations);
        assert_eq!(r.skipped, 1);
    }
}
