//! Exhaustive enumeration and seeded sampling of `IIM_l(G)`.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::choice::{choice_bits, ChoiceSequence, LevelChoice};
use crate::error::{IimError, Result};
use crate::graph::Graph;
use crate::iim::{iim_generate, IimGraph};
use crate::report::{ReportHeader, Tally};

/// Default enumeration budget in choice bits (at most `2^20` sequences).
pub const DEFAULT_BIT_BUDGET: usize = 20;

/// Lazy stream of `(ChoiceSequence, IimGraph)` in lexicographic bit order.
#[derive(Debug, Clone)]
pub struct Enumeration {
    g0: Graph,
    steps: usize,
    next: u64,
    end: u64,
}

impl Enumeration {
    /// Number of sequences in the full index space.
    pub fn total(&self) -> u64 {
        1u64 << choice_bits(self.g0.n(), self.steps)
    }

    /// Restricts the stream to the index range `range` (clamped to the full space).
    pub fn with_range(mut self, range: Range<u64>) -> Self {
        let total = self.total();
        self.next = range.start.min(total);
        self.end = range.end.min(total);
        self
    }
}

impl Iterator for Enumeration {
    type Item = (ChoiceSequence, IimGraph);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let seq = ChoiceSequence::from_index(self.g0.n(), self.steps, self.next);
        self.next += 1;
        let h = iim_generate(&self.g0, &seq).expect("enumerated sequences follow the doubling law");
        Some((seq, h))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

pub fn enumerate_iim(g0: &Graph, steps: usize) -> Result<Enumeration> {
    enumerate_iim_with_budget(g0, steps, DEFAULT_BIT_BUDGET)
}

pub fn enumerate_iim_with_budget(g0: &Graph, steps: usize, budget_bits: usize) -> Result<Enumeration> {
    let bits = g0
        .n()
        .checked_mul((1usize << steps.min(62)) - 1)
        .filter(|_| steps < 62)
        .unwrap_or(usize::MAX);
    if bits > budget_bits || bits > 62 {
        return Err(IimError::BudgetExceeded {
            bits,
            budget: budget_bits,
        });
    }
    Ok(Enumeration {
        g0: g0.clone(),
        steps,
        next: 0,
        end: 1u64 << bits,
    })
}

/// Draws a choice sequence where each vertex is cloned with probability `p`.
pub fn sample_choices<R: Rng>(n0: usize, steps: usize, p: f64, rng: &mut R) -> ChoiceSequence {
    ChoiceSequence::new(
        (0..steps)
            .map(|i| LevelChoice::from_bits((0..n0 << i).map(|_| !rng.random_bool(p)).collect()))
            .collect(),
    )
}

/// Seeded sample from `IIM_l(g0)`; identical `(g0, l, p, seed)` give identical output.
pub fn sample_iim(g0: &Graph, steps: usize, p: f64, seed: u64) -> Result<(ChoiceSequence, IimGraph)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(IimError::Precondition(format!(
            "clone probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq = sample_choices(g0.n(), steps, p, &mut rng);
    let h = iim_generate(g0, &seq)?;
    Ok((seq, h))
}

/// Splits `0..total` into `workers` contiguous ranges, runs `f` on each in its own
/// thread and returns the results in range order.
pub fn par_ranges<T, F>(total: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let workers = (workers.max(1) as u64).min(total.max(1));
    let chunk = total.div_ceil(workers);
    let ranges: Vec<Range<u64>> = (0..workers)
        .map(|w| (w * chunk).min(total)..((w + 1) * chunk).min(total))
        .collect();
    if ranges.len() == 1 {
        return vec![f(ranges[0].clone())];
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let f = &f;
                s.spawn(move || f(r))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Default worker count: the available hardware parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Enumeration budget and worker count shared by the verification drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub budget_bits: usize,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            budget_bits: DEFAULT_BIT_BUDGET,
            workers: default_workers(),
        }
    }
}

impl RunConfig {
    pub fn single_threaded() -> Self {
        Self {
            workers: 1,
            ..Self::default()
        }
    }
}

/// Runs `f` on every member of `IIM_steps(g0)`, in parallel over index ranges.
pub fn tally_enumeration<F>(g0: &Graph, steps: usize, cfg: &RunConfig, f: F) -> Result<Tally>
where
    F: Fn(&ChoiceSequence, &IimGraph, &mut Tally) + Sync,
{
    let e = enumerate_iim_with_budget(g0, steps, cfg.budget_bits)?;
    let parts = par_ranges(e.total(), cfg.workers, |r| {
        let mut t = Tally::default();
        for (seq, h) in e.clone().with_range(r) {
            f(&seq, &h, &mut t);
        }
        t
    });
    Ok(Tally::merge_all(parts))
}

/// Runs `f` on `samples` seeded draws; draw `i` uses seed `seed + i`.
pub fn tally_samples<F>(
    g0: &Graph,
    steps: usize,
    p: f64,
    seed: u64,
    samples: u64,
    workers: usize,
    f: F,
) -> Result<Tally>
where
    F: Fn(&ChoiceSequence, &IimGraph, &mut Tally) + Sync,
{
    if !(0.0..=1.0).contains(&p) {
        return Err(IimError::Precondition(format!(
            "clone probability {p} outside [0, 1]"
        )));
    }
    let parts = par_ranges(samples, workers, |r| {
        let mut t = Tally::default();
        for i in r {
            let (seq, h) = sample_iim(g0, steps, p, seed.wrapping_add(i)).expect("validated inputs");
            f(&seq, &h, &mut t);
        }
        t
    });
    Ok(Tally::merge_all(parts))
}

/// Where a verification run draws its graphs from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    Exhaustive,
    /// The first `count` members in enumeration order.
    Prefix(u64),
    /// Draw `i` uses seed `seed + i`; each vertex is cloned with probability `p`.
    Sampled { p: f64, seed: u64, samples: u64 },
}

impl Source {
    /// Adds `p`, `rng` and `samples` to a report header for sampled runs.
    pub fn describe(&self, header: ReportHeader) -> ReportHeader {
        match *self {
            Source::Exhaustive => header.param("mode", "exhaustive"),
            Source::Prefix(count) => header.param("mode", "prefix").param("count", count),
            Source::Sampled { p, seed, samples } => header
                .param("mode", "sampled")
                .param("p", p)
                .param("rng", seed)
                .param("samples", samples),
        }
    }
}

/// [`tally_enumeration`] or [`tally_samples`], as selected by `source`.
pub fn tally_source<F>(g0: &Graph, steps: usize, source: &Source, cfg: &RunConfig, f: F) -> Result<Tally>
where
    F: Fn(&ChoiceSequence, &IimGraph, &mut Tally) + Sync,
{
    match *source {
        Source::Exhaustive => tally_enumeration(g0, steps, cfg, f),
        Source::Prefix(count) => {
            let e = enumerate_iim_with_budget(g0, steps, cfg.budget_bits)?;
            let parts = par_ranges(count.min(e.total()), cfg.workers, |r| {
                let mut t = Tally::default();
                for (seq, h) in e.clone().with_range(r) {
                    f(&seq, &h, &mut t);
                }
                t
            });
            Ok(Tally::merge_all(parts))
        }
        Source::Sampled { p, seed, samples } => tally_samples(g0, steps, p, seed, samples, cfg.workers, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn k1_one_step() {
        let all: Vec<_> = enumerate_iim(&Graph::complete(1), 1).unwrap().collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].1.graph(), &Graph::complete(2));
        assert_eq!(all[1].1.graph(), &Graph::empty(2));
    }

    #[test]
    fn counts_follow_doubling() {
        assert_eq!(enumerate_iim(&Graph::complete(1), 3).unwrap().count(), 128);
        let e = enumerate_iim(&Graph::complete(1), 4).unwrap();
        assert_eq!(e.total(), 32768);
        let distinct: HashSet<_> = e.map(|(s, _)| s.to_string()).collect();
        assert_eq!(distinct.len(), 32768);
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(
            enumerate_iim(&Graph::complete(3), 3),
            Err(IimError::BudgetExceeded { bits: 21, .. })
        ));
        assert!(enumerate_iim_with_budget(&Graph::complete(3), 3, 21).is_ok());
    }

    #[test]
    fn ranges_partition_the_space() {
        let g0 = Graph::path(3);
        let full: Vec<_> = enumerate_iim(&g0, 2).unwrap().map(|(s, _)| s).collect();
        let parts = par_ranges(full.len() as u64, 5, |r| {
            enumerate_iim(&g0, 2)
                .unwrap()
                .with_range(r)
                .map(|(s, _)| s)
                .collect::<Vec<_>>()
        });
        assert_eq!(parts.concat(), full);
    }

    #[test]
    fn sampling_edge_probabilities() {
        let g0 = Graph::path(4);
        for seed in [0, 7, 99] {
            let (s, _) = sample_iim(&g0, 3, 1.0, seed).unwrap();
            assert_eq!(s, ChoiceSequence::all_clone(4, 3));
            let (s, _) = sample_iim(&g0, 3, 0.0, seed).unwrap();
            assert_eq!(s, ChoiceSequence::all_anticlone(4, 3));
        }
        assert!(sample_iim(&g0, 1, 1.5, 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let g0 = Graph::complete(1);
        let a = sample_iim(&g0, 6, 0.5, 42).unwrap();
        let b = sample_iim(&g0, 6, 0.5, 42).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1.graph(), b.1.graph());
        let c = sample_iim(&g0, 6, 0.5, 43).unwrap();
        assert_ne!(a.0, c.0);
    }
}
