//! Hop distances, diameter, and the diameter bounds for IIM graphs.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::enumerate::{tally_enumeration, tally_source, RunConfig, Source};
use crate::error::{IimError, Result};
use crate::graph::{Graph, VertexSet};
use crate::report::{graph_label, ReportHeader, VerificationReport};

/// A hop count, or infinity for disconnected graphs. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// BFS hop counts from `s`; `None` for unreachable vertices.
pub fn bfs(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let n = g.n();
    let mut dist = vec![None; n];
    dist[s] = Some(0);
    let mut seen = VertexSet::from_ids(n, [s]);
    let mut frontier = seen.clone();
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = VertexSet::new(n);
        for v in frontier.iter() {
            next.union_with(&g.neighbors(v));
        }
        let fresh = next.difference(&seen);
        for v in fresh.iter() {
            dist[v] = Some(d);
        }
        seen.union_with(&fresh);
        frontier = fresh;
    }
    dist
}

/// All-pairs hop counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Option<usize>>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(bfs(g, s));
        }
        Self { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.d[u * self.n + v].map_or(Distance::Infinite, Distance::Finite)
    }

    pub fn eccentricity(&self, v: usize) -> Distance {
        (0..self.n).map(|u| self.get(v, u)).max().unwrap_or(Distance::Finite(0))
    }

    pub fn diameter(&self) -> Distance {
        (0..self.n)
            .map(|v| self.eccentricity(v))
            .max()
            .unwrap_or(Distance::Finite(0))
    }
}

pub fn diameter(g: &Graph) -> Distance {
    if !g.is_connected() {
        return Distance::Infinite;
    }
    let mut best = 0;
    for s in 0..g.n() {
        let ecc = bfs(g, s).into_iter().flatten().max().unwrap_or(0);
        best = best.max(ecc);
    }
    Distance::Finite(best)
}

/// Bound on `diam(H)` for connected `H` in `IIM_1(g0)`: `max(diam(g0), 5)` for
/// connected seeds, 6 otherwise.
pub fn diameter_bound_one_step(g0: &Graph) -> usize {
    match diameter(g0) {
        Distance::Finite(d) => d.max(5),
        Distance::Infinite => 6,
    }
}

/// Checks every connected `H` in `IIM_1(g0)` against [`diameter_bound_one_step`].
/// Disconnected members are skipped and counted.
pub fn verify_diameter_theorem(g0: &Graph, cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let bound = diameter_bound_one_step(g0);
    let tally = tally_enumeration(g0, 1, cfg, |seq, h, t| match diameter(h.graph()) {
        Distance::Infinite => t.skip(),
        Distance::Finite(d) => {
            t.observe(d as f64, || seq.to_string());
            if d > bound {
                t.violation(seq.to_string(), format!("diameter {d} exceeds {bound}"));
            }
        }
    })?;
    let header = ReportHeader::new("diameter", &graph_label(g0), 1)
        .bound(bound as f64)
        .param("seed_connected", g0.is_connected());
    Ok(tally.into_report(header, started))
}

/// Checks `diam(H) <= max(diam(g0), 6)` on the connected members of
/// `IIM_steps(g0)` drawn from `source`; the seed must be connected.
pub fn verify_diameter_corollary(
    g0: &Graph,
    steps: usize,
    source: &Source,
    cfg: &RunConfig,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let Distance::Finite(d0) = diameter(g0) else {
        return Err(IimError::Precondition("seed graph must be connected".into()));
    };
    let bound = d0.max(6);
    let tally = tally_source(g0, steps, source, cfg, |seq, h, t| match diameter(h.graph()) {
        Distance::Infinite => t.skip(),
        Distance::Finite(d) => {
            t.observe(d as f64, || seq.to_string());
            if d > bound {
                t.violation(seq.to_string(), format!("diameter {d} exceeds {bound}"));
            }
        }
    })?;
    let header = ReportHeader::new("diameter-corollary", &graph_label(g0), steps).bound(bound as f64);
    Ok(tally.into_report(source.describe(header), started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::LevelChoice;
    use crate::iim::{iim_step, IimGraph};

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&Graph::path(4)), Distance::Finite(3));
        assert_eq!(diameter(&Graph::complete(5)), Distance::Finite(1));
        let g = Graph::complete(2).disjoint_union(&Graph::complete(1));
        assert_eq!(diameter(&g), Distance::Infinite);
        assert_eq!(diameter(&Graph::complete(1)), Distance::Finite(0));
    }

    #[test]
    fn matrix_agrees_with_diameter() {
        for g in [Graph::path(6), Graph::cycle(7), Graph::complete(3).disjoint_union(&Graph::path(2))] {
            let m = DistanceMatrix::new(&g);
            assert_eq!(m.diameter(), diameter(&g));
            for u in 0..g.n() {
                assert_eq!(m.get(u, u), Distance::Finite(0));
                for v in 0..g.n() {
                    assert_eq!(m.get(u, v), m.get(v, u));
                }
            }
        }
        let m = DistanceMatrix::new(&Graph::cycle(7));
        assert_eq!(m.get(0, 3), Distance::Finite(3));
        assert_eq!(m.eccentricity(2), Distance::Finite(3));
    }

    #[test]
    fn all_clone_keeps_diameter() {
        let all_clone = |g: &Graph| {
            let h = IimGraph::seed(g.clone());
            diameter(iim_step(&h, &LevelChoice::all_clone(g.n())).unwrap().graph())
        };
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        for g in [Graph::path(5), Graph::cycle(6), Graph::path(3), Graph::cycle(4), star] {
            assert_eq!(all_clone(&g), diameter(&g));
        }
        // clones on the same level are non-adjacent, so complete graphs reach 2
        assert_eq!(all_clone(&Graph::complete(3)), Distance::Finite(2));
        assert_eq!(all_clone(&Graph::complete(1)), Distance::Finite(1));
    }

    #[test]
    fn k3_one_step_within_bound() {
        let r = verify_diameter_theorem(&Graph::complete(3), &RunConfig::single_threaded()).unwrap();
        assert!(r.passed);
        assert_eq!(r.bound, Some(5.0));
        assert_eq!(r.checked + r.skipped, 8);
        assert!(r.max_observed.unwrap() <= 5.0);
    }
}
