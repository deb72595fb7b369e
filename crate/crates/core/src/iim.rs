//! The IIM growth step and genealogy bookkeeping.
//!
//! Level 0 holds the seed graph on ids `0..n0`; level `i >= 1` occupies the
//! contiguous range `n0 * 2^(i-1) .. n0 * 2^i`, and the copy of vertex `v`
//! made at level `i` has id `n0 * 2^(i-1) + v`.

use std::ops::Range;

use crate::choice::{ChoiceSequence, CopyKind, LevelChoice};
use crate::error::{IimError, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

/// A graph together with the level and copy history of every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct IimGraph {
    graph: Graph,
    n0: usize,
    level: Vec<usize>,
    kind: Vec<CopyKind>,
    precopy: Vec<Option<usize>>,
    choices: ChoiceSequence,
}

impl IimGraph {
    /// `IIM_0(G) = {G}`.
    pub fn seed(g0: Graph) -> Self {
        let n0 = g0.n();
        Self {
            graph: g0,
            n0,
            level: vec![0; n0],
            kind: vec![CopyKind::Original; n0],
            precopy: vec![None; n0],
            choices: ChoiceSequence::default(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn top_level(&self) -> usize {
        self.choices.steps()
    }

    pub fn choices(&self) -> &ChoiceSequence {
        &self.choices
    }

    pub fn level_of(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn kind(&self, v: usize) -> CopyKind {
        self.kind[v]
    }

    pub fn precopy(&self, v: usize) -> Option<usize> {
        self.precopy[v]
    }

    /// Id range of level `i`.
    pub fn level_range(&self, i: usize) -> Range<usize> {
        level_range(self.n0, i)
    }

    pub fn level_set(&self, i: usize) -> VertexSet {
        VertexSet::from_ids(self.n(), self.level_range(i))
    }

    /// Number of vertices in `H_i` (levels `0..=i`).
    pub fn prefix_len(&self, i: usize) -> usize {
        self.n0 << i
    }

    /// The copy of `v` made at level `i`, if `v` existed before that level.
    pub fn copy_at_level(&self, v: usize, i: usize) -> Option<usize> {
        if i == 0 || i > self.top_level() || v >= self.prefix_len(i - 1) {
            None
        } else {
            Some(self.prefix_len(i - 1) + v)
        }
    }

    /// `H_i` as an IIM graph: levels `0..=i`.
    pub fn prefix(&self, i: usize) -> IimGraph {
        let i = i.min(self.top_level());
        let len = self.prefix_len(i);
        let (graph, _) = self
            .graph
            .induced_subgraph(&VertexSet::from_ids(self.n(), 0..len));
        IimGraph {
            graph,
            n0: self.n0,
            level: self.level[..len].to_vec(),
            kind: self.kind[..len].to_vec(),
            precopy: self.precopy[..len].to_vec(),
            choices: ChoiceSequence::new(self.choices.levels[..i].to_vec()),
        }
    }

    /// The seed graph on level 0.
    pub fn seed_graph(&self) -> Graph {
        self.prefix(0).graph
    }

    /// `v`, its precopy, its precopy's precopy, ... down to level 0.
    pub fn lineage(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.precopy[cur] {
            out.push(p);
            cur = p;
        }
        out
    }

    pub fn is_ancestor(&self, ancestor: usize, v: usize) -> bool {
        self.lineage(v).contains(&ancestor)
    }

    /// `S_c(v)`: `v` and every direct clone of `v`.
    pub fn clone_set(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::new(self.n());
        s.insert(v);
        for i in self.level[v] + 1..=self.top_level() {
            let c = self.copy_at_level(v, i).unwrap();
            if self.kind[c] == CopyKind::Clone {
                s.insert(c);
            }
        }
        s
    }

    /// `S_a(v)`: every direct anticlone of `v`.
    pub fn anticlone_set(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::new(self.n());
        for i in self.level[v] + 1..=self.top_level() {
            let c = self.copy_at_level(v, i).unwrap();
            if self.kind[c] == CopyKind::Anticlone {
                s.insert(c);
            }
        }
        s
    }

    /// Anticlone links on the genealogy path from `ancestor` down to `v`, mod 2.
    /// `None` when `ancestor` is not an ancestor of `v` (or `v` itself).
    pub fn anticlone_parity(&self, v: usize, ancestor: usize) -> Option<Parity> {
        let mut count = 0;
        let mut cur = v;
        loop {
            if cur == ancestor {
                return Some(Parity::from_count(count));
            }
            if self.kind[cur] == CopyKind::Anticlone {
                count += 1;
            }
            cur = self.precopy[cur]?;
        }
    }

    /// First level containing an anticlone, and how many level-0 vertices were
    /// anticloned at that level.
    pub fn a_l_count(&self) -> Result<(usize, usize)> {
        let first = (1..=self.top_level())
            .find(|&i| self.level_range(i).any(|v| self.kind[v] == CopyKind::Anticlone))
            .ok_or(IimError::NoAnticlone)?;
        let count = (0..self.n0)
            .filter(|&u| self.kind[self.copy_at_level(u, first).unwrap()] == CopyKind::Anticlone)
            .count();
        Ok((first, count))
    }

    /// Rechecks the doubling law, level independence and the neighborhood law
    /// against the stored genealogy.
    pub fn check_invariants(&self) -> Result<()> {
        let l = self.top_level();
        if self.n() != self.n0 << l {
            return Err(IimError::Validation(format!(
                "doubling law: {} vertices after {l} steps from {}",
                self.n(),
                self.n0
            )));
        }
        for i in 1..=l {
            if !self.graph.is_independent(&self.level_set(i)) {
                return Err(IimError::Validation(format!("level {i} is not independent")));
            }
            let before = self.prefix_len(i - 1);
            let prior = VertexSet::from_ids(self.n(), 0..before);
            for w in self.level_range(i) {
                let p = self.precopy[w].ok_or_else(|| {
                    IimError::Validation(format!("vertex {w} at level {i} has no precopy"))
                })?;
                if self.level[p] >= i || p != w - before {
                    return Err(IimError::Validation(format!("vertex {w} has bad precopy {p}")));
                }
                let mut closed = self.graph.neighbors(p).intersection(&prior);
                closed.insert(p);
                let expected = match self.kind[w] {
                    CopyKind::Clone => closed,
                    CopyKind::Anticlone => prior.difference(&closed),
                    CopyKind::Original => {
                        return Err(IimError::Validation(format!(
                            "vertex {w} at level {i} marked original"
                        )))
                    }
                };
                if self.graph.neighbors(w).intersection(&prior) != expected {
                    return Err(IimError::Validation(format!(
                        "vertex {w} violates the neighborhood law"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn level_range(n0: usize, i: usize) -> Range<usize> {
    if i == 0 {
        0..n0
    } else {
        (n0 << (i - 1))..(n0 << i)
    }
}

/// Appends one level: the copy of `v` is adjacent to `N[v]` (clone) or to
/// `V(h) \ N[v]` (anticlone), computed on the pre-step graph.
pub fn iim_step(h: &IimGraph, c: &LevelChoice) -> Result<IimGraph> {
    let n = h.n();
    if c.len() != n {
        return Err(IimError::ChoiceLength {
            expected: n,
            got: c.len(),
        });
    }
    let old = &h.graph;
    let mut g = Graph::empty(2 * n);
    for (u, v) in old.edges() {
        g.add_edge_unchecked(u, v);
    }
    let everything = VertexSet::full(n);
    for v in 0..n {
        let mut closed = old.neighbors(v);
        closed.insert(v);
        let nbrs = if c.is_anticlone(v) {
            everything.difference(&closed)
        } else {
            closed
        };
        for u in nbrs.iter() {
            g.add_edge_unchecked(n + v, u);
        }
    }

    let new_level = h.top_level() + 1;
    let mut out = h.clone();
    out.graph = g;
    out.level.extend(std::iter::repeat_n(new_level, n));
    out.kind.extend((0..n).map(|v| c.kind(v)));
    out.precopy.extend((0..n).map(Some));
    out.choices.levels.push(c.clone());
    Ok(out)
}

/// Folds [`iim_step`] over `seq` starting from `g0`.
pub fn iim_generate(g0: &Graph, seq: &ChoiceSequence) -> Result<IimGraph> {
    seq.validate(g0.n())?;
    seq.levels
        .iter()
        .try_fold(IimGraph::seed(g0.clone()), |h, c| iim_step(&h, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_examples() {
        let k1 = IimGraph::seed(Graph::complete(1));
        let h = iim_step(&k1, &LevelChoice::all_clone(1)).unwrap();
        assert_eq!(h.graph(), &Graph::complete(2));
        let h = iim_step(&k1, &LevelChoice::all_anticlone(1)).unwrap();
        assert_eq!(h.graph(), &Graph::empty(2));

        // K2 with both vertices cloned: K4 minus the edge between the new vertices.
        let k2 = IimGraph::seed(Graph::complete(2));
        let h = iim_step(&k2, &LevelChoice::all_clone(2)).unwrap();
        assert_eq!(h.graph().edge_count(), 5);
        assert!(!h.graph().has_edge(2, 3));
        assert!(iim_step(&k2, &LevelChoice::all_clone(3)).is_err());
    }

    #[test]
    fn generate_examples() {
        let k1 = Graph::complete(1);
        assert_eq!(
            iim_generate(&k1, &ChoiceSequence::default()).unwrap().graph(),
            &k1
        );
        let h = iim_generate(&k1, &ChoiceSequence::all_clone(1, 2)).unwrap();
        let mut expected = Graph::complete(4);
        expected = Graph::new(
            4,
            &expected.edges().filter(|&e| e != (2, 3)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(h.graph(), &expected);
        h.check_invariants().unwrap();
    }

    #[test]
    fn clone_and_anticlone_sets() {
        let h = iim_generate(&Graph::complete(1), &ChoiceSequence::all_clone(1, 2)).unwrap();
        let sc = h.clone_set(0);
        assert_eq!(sc.to_vec(), vec![0, 1, 2]);
        assert!(h.graph().is_clique(&sc));
        assert!(h.anticlone_set(0).is_empty());

        let h = iim_generate(&Graph::complete(1), &ChoiceSequence::all_anticlone(1, 1)).unwrap();
        assert_eq!(h.anticlone_set(0).to_vec(), vec![1]);
        assert!(h.clone_set(0).is_disjoint(&h.anticlone_set(0)));
    }

    #[test]
    fn parity_examples() {
        // a=0, level1: anticlone of 0 (id 1), level2: anticlone of 1 (id 3), level3: clone of 3 (id 7)
        let seq = ChoiceSequence::new(vec![
            LevelChoice::anticloning(1, [0]),
            LevelChoice::anticloning(2, [1]),
            LevelChoice::anticloning(4, []),
        ]);
        let h = iim_generate(&Graph::complete(1), &seq).unwrap();
        assert_eq!(h.anticlone_parity(0, 0), Some(Parity::Even));
        assert_eq!(h.anticlone_parity(1, 0), Some(Parity::Odd));
        assert_eq!(h.lineage(7), vec![7, 3, 1, 0]);
        assert_eq!(h.anticlone_parity(7, 0), Some(Parity::Even));
        assert_eq!(h.anticlone_parity(2, 1), None);
    }

    #[test]
    fn first_anticlone_level_counts() {
        let k3 = Graph::complete(3);
        let h = iim_generate(&k3, &ChoiceSequence::all_anticlone(3, 1)).unwrap();
        assert_eq!(h.a_l_count().unwrap(), (1, 3));

        let seq = ChoiceSequence::new(vec![
            LevelChoice::all_clone(3),
            LevelChoice::anticloning(6, [3, 4, 5]),
        ]);
        let h = iim_generate(&k3, &seq).unwrap();
        assert_eq!(h.a_l_count().unwrap(), (2, 0));

        let h = iim_generate(&k3, &ChoiceSequence::all_clone(3, 2)).unwrap();
        assert_eq!(h.a_l_count(), Err(IimError::NoAnticlone));
    }
}
