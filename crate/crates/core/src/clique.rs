//! Maximum cliques, non-adjacent triples, and clique growth along IIM steps.

use crate::choice::{ChoiceSequence, LevelChoice};
use crate::error::{IimError, Result};
use crate::graph::{Graph, VertexSet};
use crate::iim::{iim_step, IimGraph};

pub const DEFAULT_CLIQUE_LIMIT: usize = 64;
pub const TRIPLE_LIMIT: usize = 24;
pub const DEFAULT_GROWTH_BUDGET: usize = 8;

pub fn clique_number(g: &Graph) -> Result<(usize, Vec<usize>)> {
    clique_number_with_limit(g, DEFAULT_CLIQUE_LIMIT)
}

/// Exact maximum clique: branch and bound with greedy-coloring bounds.
pub fn clique_number_with_limit(g: &Graph, limit: usize) -> Result<(usize, Vec<usize>)> {
    check_limit(g, limit)?;
    let mut s = CliqueSearch::new(g, false);
    let all = VertexSet::full(g.n()).words().to_vec();
    s.expand(all, &mut Vec::new());
    Ok((s.best.len(), s.best))
}

/// Every clique of size `ω(g)`, each sorted, in lexicographic order.
pub fn maximum_cliques(g: &Graph, limit: usize) -> Result<Vec<Vec<usize>>> {
    check_limit(g, limit)?;
    let mut s = CliqueSearch::new(g, true);
    let all = VertexSet::full(g.n()).words().to_vec();
    s.expand(all, &mut Vec::new());
    let mut out: Vec<Vec<usize>> = s
        .found
        .into_iter()
        .filter(|c| c.len() == s.best.len())
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn check_limit(g: &Graph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(IimError::SizeLimit {
            solver: "clique_number",
            limit,
            n: g.n(),
        });
    }
    Ok(())
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    /// Collect every clique reaching the incumbent size.
    collect: bool,
    found: Vec<Vec<usize>>,
}

impl<'a> CliqueSearch<'a> {
    fn new(g: &'a Graph, collect: bool) -> Self {
        Self {
            g,
            best: Vec::new(),
            collect,
            found: Vec::new(),
        }
    }

    /// Greedy sequential coloring of `cand`; vertices come out in nondecreasing
    /// color order together with their color number.
    fn color_sort(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut uncolored = cand.to_vec();
        let mut out = Vec::new();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first(&q) {
                clear(&mut q, v);
                clear(&mut uncolored, v);
                for (qw, rw) in q.iter_mut().zip(self.g.row(v)) {
                    *qw &= !rw;
                }
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut cand: Vec<u64>, current: &mut Vec<usize>) {
        if cand.iter().all(|&w| w == 0) {
            self.record(current);
            return;
        }
        let order = self.color_sort(&cand);
        for &(v, color) in order.iter().rev() {
            let enough = if self.collect {
                current.len() + color < self.best.len()
            } else {
                current.len() + color <= self.best.len()
            };
            if enough {
                return;
            }
            current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            self.expand(next, current);
            current.pop();
            clear(&mut cand, v);
        }
    }

    fn record(&mut self, current: &[usize]) {
        if current.len() > self.best.len() {
            self.best = current.to_vec();
            self.found.clear();
        }
        if self.collect && current.len() == self.best.len() {
            self.found.push(current.to_vec());
        }
    }
}

fn first(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear(words: &mut [u64], v: usize) {
    words[v / 64] &= !(1u64 << (v % 64));
}

/// `2 + ceil(2(k - 5) / 3)`, returned raw (it is below 2 for `k < 5`).
pub fn clique_lower_bound(k: i64) -> i64 {
    let a = 2 * (k - 5);
    2 - (-a).div_euclid(3)
}

/// `ceil((k + 1) / 2)` from clone and anticlone chains.
pub fn trivial_clique_bound(k: i64) -> i64 {
    (k + 2).div_euclid(2)
}

/// Iterated base-2 logarithm: applications of `log2` until the value is at most 1.
pub fn log_star(n: u64) -> u32 {
    let mut x = n as f64;
    let mut count = 0;
    while x > 1.0 {
        x = x.log2();
        count += 1;
    }
    count
}

/// Disjoint `A_1, A_2, A_3` with `v_i ∈ A_i` non-adjacent to all of `A_{i+1 mod 3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonAdjacentTriple {
    pub parts: [VertexSet; 3],
    pub witnesses: [usize; 3],
}

impl NonAdjacentTriple {
    pub fn new(n: usize, parts: [&[usize]; 3], witnesses: [usize; 3]) -> Self {
        Self {
            parts: parts.map(|p| VertexSet::from_ids(n, p.iter().copied())),
            witnesses,
        }
    }

    /// Checks the definition; with `cliques`, each part must also induce a clique.
    pub fn validate(&self, g: &Graph, cliques: bool) -> Result<()> {
        for i in 0..3 {
            let a = &self.parts[i];
            let next = &self.parts[(i + 1) % 3];
            if a.universe() != g.n() {
                return Err(IimError::InvalidTriple(format!(
                    "part {} lives on {} vertices, graph has {}",
                    i + 1,
                    a.universe(),
                    g.n()
                )));
            }
            if !a.is_disjoint(next) {
                return Err(IimError::InvalidTriple(format!(
                    "parts {} and {} intersect",
                    i + 1,
                    (i + 1) % 3 + 1
                )));
            }
            let v = self.witnesses[i];
            if !a.contains(v) {
                return Err(IimError::InvalidTriple(format!(
                    "witness {v} not in part {}",
                    i + 1
                )));
            }
            if !g.neighbors(v).is_disjoint(next) {
                return Err(IimError::InvalidTriple(format!(
                    "witness {v} has a neighbor in part {}",
                    (i + 1) % 3 + 1
                )));
            }
            if cliques && !g.is_clique(a) {
                return Err(IimError::InvalidTriple(format!(
                    "part {} is not a clique",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn sizes(&self) -> [usize; 3] {
        [0, 1, 2].map(|i| self.parts[i].len())
    }
}

fn cliques_of_size(g: &Graph, s: usize) -> Vec<u32> {
    fn extend(g: &Graph, s: usize, start: usize, mask: u32, common: u32, out: &mut Vec<u32>) {
        if mask.count_ones() as usize == s {
            out.push(mask);
            return;
        }
        for v in start..g.n() {
            if common >> v & 1 == 1 {
                let row = g.row(v)[0] as u32;
                extend(g, s, v + 1, mask | 1 << v, common & row, out);
            }
        }
    }
    let mut out = Vec::new();
    let all = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
    extend(g, s, 0, 0, all, &mut out);
    out
}

/// A non-adjacent triple whose parts are cliques of size `s`, if one exists.
pub fn find_non_adjacent_triple(g: &Graph, s: usize) -> Result<Option<NonAdjacentTriple>> {
    let n = g.n();
    if n > TRIPLE_LIMIT || s == 0 || s > 3 {
        return Err(IimError::SizeLimit {
            solver: "find_non_adjacent_triple",
            limit: TRIPLE_LIMIT,
            n,
        });
    }
    let rows: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
    let cliques = cliques_of_size(g, s);
    // witness in `a` with no neighbor in `b`
    let witness = |a: u32, b: u32| -> Option<usize> {
        if a & b != 0 {
            return None;
        }
        (0..n).find(|&v| a >> v & 1 == 1 && rows[v] & b == 0)
    };
    let out: Vec<Vec<usize>> = cliques
        .iter()
        .map(|&a| {
            (0..cliques.len())
                .filter(|&j| witness(a, cliques[j]).is_some())
                .collect()
        })
        .collect();
    for (i1, &a1) in cliques.iter().enumerate() {
        for &i2 in out[i1].iter().filter(|&&j| j > i1) {
            let a2 = cliques[i2];
            for &i3 in out[i2].iter().filter(|&&j| j > i1) {
                let a3 = cliques[i3];
                if a3 & a1 != 0 {
                    continue;
                }
                if let Some(v3) = witness(a3, a1) {
                    let to_vec = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
                    let t = NonAdjacentTriple::new(
                        n,
                        [&to_vec(a1), &to_vec(a2), &to_vec(a3)],
                        [witness(a1, a2).unwrap(), witness(a2, a3).unwrap(), v3],
                    );
                    debug_assert!(t.validate(g, true).is_ok());
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

/// Which case of the growth argument produced a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthCase {
    /// At least two witnesses cloned.
    TwoCloned,
    /// Exactly one witness cloned.
    OneCloned,
    /// Every witness anticloned; the output parts are cyclically reordered.
    AllAnticloned,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrownTriple {
    pub graph: IimGraph,
    pub triple: NonAdjacentTriple,
    /// `origin[j]` is the index of the input part contained in output part `j`.
    pub origin: [usize; 3],
    pub case: GrowthCase,
}

impl GrownTriple {
    /// Checks containment, cliques, and that at least two parts grew by one.
    pub fn validate(&self, before: &NonAdjacentTriple) -> Result<()> {
        self.triple.validate(self.graph.graph(), true)?;
        let mut grown = 0;
        for j in 0..3 {
            let a = &before.parts[self.origin[j]];
            let b = &self.triple.parts[j];
            let lifted = VertexSet::from_ids(b.universe(), a.iter());
            if !lifted.is_subset(b) {
                return Err(IimError::InvalidTriple(format!(
                    "output part {} does not contain input part {}",
                    j + 1,
                    self.origin[j] + 1
                )));
            }
            match b.len() - a.len() {
                0 => {}
                1 => grown += 1,
                d => {
                    return Err(IimError::InvalidTriple(format!(
                        "output part {} grew by {d}",
                        j + 1
                    )))
                }
            }
        }
        if grown < 2 {
            return Err(IimError::InvalidTriple(format!("only {grown} parts grew")));
        }
        Ok(())
    }
}

/// Applies `c` to `h` and returns the grown triple.
pub fn grow_triple(h: &IimGraph, t: &NonAdjacentTriple, c: &LevelChoice) -> Result<GrownTriple> {
    t.validate(h.graph(), true)?;
    let next = iim_step(h, c)?;
    let n_new = next.n();
    let copy = |v: usize| h.n() + v;
    let lift = |s: &VertexSet| VertexSet::from_ids(n_new, s.iter());
    let with = |s: &VertexSet, v: usize| {
        let mut s = lift(s);
        s.insert(v);
        s
    };
    let w = t.witnesses;
    let a = &t.parts;
    let cloned: Vec<usize> = (0..3).filter(|&i| !c.is_anticlone(w[i])).collect();

    let (triple, origin, case) = match cloned.len() {
        2 | 3 => {
            let mut parts = [lift(&a[0]), lift(&a[1]), lift(&a[2])];
            for &i in &cloned[..2] {
                parts[i].insert(copy(w[i]));
            }
            (NonAdjacentTriple { parts, witnesses: w }, [0, 1, 2], GrowthCase::TwoCloned)
        }
        1 => {
            let i = cloned[0];
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let mut parts = [lift(&a[0]), lift(&a[1]), lift(&a[2])];
            parts[i] = with(&a[i], copy(w[i]));
            parts[k] = with(&a[k], copy(w[j]));
            (NonAdjacentTriple { parts, witnesses: w }, [0, 1, 2], GrowthCase::OneCloned)
        }
        _ => {
            let b1 = with(&a[0], copy(w[2]));
            let b2 = with(&a[1], copy(w[0]));
            let b3 = with(&a[2], copy(w[1]));
            (
                NonAdjacentTriple {
                    parts: [b3, b2, b1],
                    witnesses: [copy(w[1]), copy(w[0]), copy(w[2])],
                },
                [2, 1, 0],
                GrowthCase::AllAnticloned,
            )
        }
    };
    let grown = GrownTriple {
        graph: next,
        triple,
        origin,
        case,
    };
    grown.validate(t)?;
    Ok(grown)
}

/// Result of the slow clique-growth schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct SlowGrowth {
    pub sequence: ChoiceSequence,
    pub graph: IimGraph,
    /// `ω(H_i)` for `i = 0..=l`.
    pub omega_by_level: Vec<usize>,
    /// Levels whose non-adjacent tuple of maximum cliques had fewer than two
    /// members; one step with every maximum clique in a single group was taken.
    pub stalls: Vec<usize>,
}

impl SlowGrowth {
    pub fn omega(&self) -> usize {
        *self.omega_by_level.last().unwrap()
    }
}

fn mutually_non_adjacent(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    let sees_none = |x: &VertexSet, y: &VertexSet| x.iter().any(|v| g.neighbors(v).is_disjoint(y));
    a.is_disjoint(b) && sees_none(a, b) && sees_none(b, a)
}

fn sets_adjacent(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    let covers = |x: &VertexSet, y: &VertexSet| x.iter().all(|v| !g.neighbors(v).is_disjoint(y));
    covers(a, b) && covers(b, a)
}

/// Grows `l` levels from `K_1` by repeatedly anticloning one group of adjacent
/// maximum cliques per level and cloning the vertices with no neighbor in it.
pub fn construct_slow_clique_growth(l: usize) -> Result<SlowGrowth> {
    construct_slow_clique_growth_with_budget(l, DEFAULT_GROWTH_BUDGET)
}

pub fn construct_slow_clique_growth_with_budget(l: usize, budget: usize) -> Result<SlowGrowth> {
    if l > budget {
        return Err(IimError::BudgetExceeded { bits: l, budget });
    }
    let limit = 1usize << l;
    let mut h = IimGraph::seed(Graph::complete(1));
    let mut omega_by_level = vec![1];
    let mut stalls = Vec::new();

    while h.top_level() < l {
        let g = h.graph();
        let n = g.n();
        let maxima: Vec<VertexSet> = maximum_cliques(g, limit)?
            .into_iter()
            .map(|c| VertexSet::from_ids(n, c))
            .collect();

        // greedy maximal non-adjacent tuple, then groups of adjacent cliques
        let mut tuple: Vec<usize> = Vec::new();
        for (i, c) in maxima.iter().enumerate() {
            if tuple.iter().all(|&j| mutually_non_adjacent(g, c, &maxima[j])) {
                tuple.push(i);
            }
        }
        let mut groups: Vec<Vec<usize>> = tuple.iter().map(|&i| vec![i]).collect();
        for (i, c) in maxima.iter().enumerate() {
            if tuple.contains(&i) {
                continue;
            }
            let slot = (0..groups.len())
                .find(|&j| groups[j].iter().all(|&m| sets_adjacent(g, c, &maxima[m])))
                .or_else(|| {
                    (0..groups.len())
                        .find(|&j| !mutually_non_adjacent(g, c, &maxima[tuple[j]]))
                })
                .unwrap_or(0);
            groups[slot].push(i);
        }
        if tuple.len() < 2 {
            stalls.push(h.top_level());
            groups = vec![(0..maxima.len()).collect()];
        }
        let mut group_sets: Vec<VertexSet> = groups
            .iter()
            .map(|grp| {
                grp.iter()
                    .fold(VertexSet::new(n), |acc, &m| acc.union(&maxima[m]))
            })
            .collect();

        for t in 0..group_sets.len() {
            if h.top_level() == l {
                break;
            }
            let g = h.graph();
            let n = g.n();
            let target = &group_sets[t];
            let bits: Vec<bool> = (0..n)
                .map(|v| target.contains(v) || !g.neighbors(v).is_disjoint(target))
                .collect();
            h = iim_step(&h, &LevelChoice::from_bits(bits))?;
            let level = h.level_set(h.top_level());
            let g = h.graph();
            for set in group_sets.iter_mut() {
                let mut grown = VertexSet::from_ids(h.n(), set.iter());
                for v in set.iter() {
                    grown.union_with(&g.neighbors(v).intersection(&level));
                }
                *set = grown;
            }
            let omega = clique_number_with_limit(g, limit)?.0;
            let prev = *omega_by_level.last().unwrap();
            if omega > prev + 1 {
                return Err(IimError::Validation(format!(
                    "clique number jumped from {prev} to {omega} at level {}",
                    h.top_level()
                )));
            }
            omega_by_level.push(omega);
        }
    }
    Ok(SlowGrowth {
        sequence: h.choices().clone(),
        graph: h,
        omega_by_level,
        stalls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::ChoiceSequence;
    use crate::enumerate::enumerate_iim;
    use crate::iim::iim_generate;

    fn brute_omega(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| g.is_clique(&VertexSet::from_ids(n, (0..n).filter(|&v| m >> v & 1 == 1))))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    pub(crate) fn figure_three() -> IimGraph {
        iim_generate(
            &Graph::complete(1),
            &ChoiceSequence::parse("L1=0x1;L2=0x2;L3=0xD", 1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn clique_examples() {
        assert_eq!(clique_number(&Graph::complete(5)).unwrap().0, 5);
        assert_eq!(clique_number(&Graph::cycle(5)).unwrap().0, 2);
        assert_eq!(clique_number(&Graph::empty(3)).unwrap().0, 1);
        assert_eq!(clique_number(&Graph::empty(0)).unwrap().0, 0);
        assert_eq!(clique_number(&figure_three().into_graph()).unwrap().0, 2);
        assert!(clique_number(&Graph::empty(65)).is_err());
    }

    #[test]
    fn clique_matches_brute_force() {
        for (_, h) in enumerate_iim(&Graph::path(3), 2).unwrap().step_by(7) {
            let (w, c) = clique_number(h.graph()).unwrap();
            assert!(h.graph().is_clique(&VertexSet::from_ids(h.n(), c.iter().copied())));
            assert_eq!(c.len(), w);
            assert_eq!(w, brute_omega(h.graph()));
        }
    }

    #[test]
    fn maximum_cliques_of_c5() {
        let all = maximum_cliques(&Graph::cycle(5), 64).unwrap();
        assert_eq!(all, vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(clique_lower_bound(5), 2);
        assert_eq!(clique_lower_bound(6), 3);
        assert_eq!(clique_lower_bound(7), 4);
        assert_eq!(clique_lower_bound(8), 4);
        assert_eq!(clique_lower_bound(4), 2);
        assert_eq!(clique_lower_bound(0), -1);
        assert_eq!(trivial_clique_bound(4), 3);
        assert_eq!(trivial_clique_bound(5), 3);
        assert_eq!(log_star(1), 0);
        assert_eq!(log_star(2), 1);
        assert_eq!(log_star(16), 3);
        assert_eq!(log_star(17), 4);
    }

    #[test]
    fn figure_three_triple() {
        let h = figure_three();
        // paper labels v_k are ids k - 1
        let t = NonAdjacentTriple::new(8, [&[0, 2], &[3, 6], &[1, 4]], [2, 3, 1]);
        t.validate(h.graph(), true).unwrap();
        assert!(find_non_adjacent_triple(h.graph(), 2).unwrap().is_some());
    }

    #[test]
    fn complete_graphs_have_no_triple() {
        for n in 1..8 {
            assert!(find_non_adjacent_triple(&Graph::complete(n), 1).unwrap().is_none());
        }
        assert!(find_non_adjacent_triple(&Graph::empty(25), 1).is_err());
    }

    #[test]
    fn growth_cases() {
        let h = figure_three();
        let t = NonAdjacentTriple::new(8, [&[0, 2], &[3, 6], &[1, 4]], [2, 3, 1]);
        let [w1, w2, w3] = t.witnesses;

        let c = LevelChoice::all_clone(8);
        let g = grow_triple(&h, &t, &c).unwrap();
        assert_eq!(g.case, GrowthCase::TwoCloned);
        assert_eq!(g.triple.sizes(), [3, 3, 2]);

        let c = LevelChoice::anticloning(8, [w2, w3]);
        let g = grow_triple(&h, &t, &c).unwrap();
        assert_eq!(g.case, GrowthCase::OneCloned);
        assert!(g.triple.parts[2].contains(8 + w2));
        assert_eq!(g.triple.sizes(), [3, 2, 3]);

        let c = LevelChoice::all_anticlone(8);
        let g = grow_triple(&h, &t, &c).unwrap();
        assert_eq!(g.case, GrowthCase::AllAnticloned);
        assert_eq!(g.origin, [2, 1, 0]);
        assert!(g.triple.parts[2].contains(8 + w3));
        assert_eq!(g.triple.witnesses, [8 + w2, 8 + w1, 8 + w3]);

        let bad = NonAdjacentTriple::new(8, [&[0, 2], &[1, 4], &[3, 6]], [2, 1, 3]);
        assert!(grow_triple(&h, &bad, &c).is_err());
    }

    #[test]
    fn all_witness_combinations_grow() {
        let h = figure_three();
        let t = NonAdjacentTriple::new(8, [&[0, 2], &[3, 6], &[1, 4]], [2, 3, 1]);
        for mask in 0..8u32 {
            for fill in [0u32, 0xff, 0x5a] {
                let mut bits: Vec<bool> = (0..8).map(|v| fill >> v & 1 == 1).collect();
                for i in 0..3 {
                    bits[t.witnesses[i]] = mask >> i & 1 == 1;
                }
                grow_triple(&h, &t, &LevelChoice::from_bits(bits)).unwrap();
            }
        }
    }

    #[test]
    fn slow_growth_small() {
        let s = construct_slow_clique_growth(0).unwrap();
        assert_eq!(s.omega(), 1);
        let s = construct_slow_clique_growth(3).unwrap();
        assert!(s.omega() <= 3);
        assert_eq!(s.graph.n(), 8);
        assert_eq!(iim_generate(&Graph::complete(1), &s.sequence).unwrap(), s.graph);
        let s = construct_slow_clique_growth(4).unwrap();
        let exhaustive_min = enumerate_iim(&Graph::complete(1), 4)
            .unwrap()
            .map(|(_, h)| clique_number(h.graph()).unwrap().0)
            .min()
            .unwrap();
        assert_eq!(s.omega(), exhaustive_min);
        assert!(s.omega() <= 4);
        assert!(construct_slow_clique_growth(9).is_err());
    }
}
