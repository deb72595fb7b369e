//! Machine-readable outcome of one theorem check.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graph::Graph;

/// Violations kept verbatim in a report; the count is always exact.
pub const MAX_RECORDED_VIOLATIONS: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub sequence: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub seed_graph: String,
    pub level: usize,
    pub parameters: BTreeMap<String, Value>,
    pub checked: u64,
    pub passed: bool,
    pub bound: Option<f64>,
    pub max_observed: Option<f64>,
    pub min_observed: Option<f64>,
    pub witness_sequences: Vec<String>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub skipped: u64,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Same report with the timing field zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_ms: 0,
            ..self.clone()
        }
    }
}

/// Per-range accumulator; merging in range order gives the same result for any
/// split, since ties keep the earliest witness.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tally {
    pub checked: u64,
    pub skipped: u64,
    pub max: Option<(f64, String)>,
    pub min: Option<(f64, String)>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub witnesses: Vec<String>,
    /// Named side counts, reported under `parameters`.
    pub counters: BTreeMap<String, u64>,
}

impl Tally {
    pub fn observe(&mut self, value: f64, sequence: impl Fn() -> String) {
        self.checked += 1;
        if self.max.as_ref().is_none_or(|(m, _)| value > *m) {
            self.max = Some((value, sequence()));
        }
        if self.min.as_ref().is_none_or(|(m, _)| value < *m) {
            self.min = Some((value, sequence()));
        }
    }

    pub fn count(&mut self) {
        self.checked += 1;
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn violation(&mut self, sequence: String, detail: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_RECORDED_VIOLATIONS {
            self.violations.push(Violation { sequence, detail });
        }
    }

    pub fn bump(&mut self, counter: &str) {
        *self.counters.entry(counter.to_string()).or_default() += 1;
    }

    pub fn witness(&mut self, sequence: String) {
        if !self.witnesses.contains(&sequence) {
            self.witnesses.push(sequence);
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.skipped += other.skipped;
        if let Some((v, s)) = other.max {
            if self.max.as_ref().is_none_or(|(m, _)| v > *m) {
                self.max = Some((v, s));
            }
        }
        if let Some((v, s)) = other.min {
            if self.min.as_ref().is_none_or(|(m, _)| v < *m) {
                self.min = Some((v, s));
            }
        }
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < MAX_RECORDED_VIOLATIONS {
                self.violations.push(v);
            }
        }
        for w in other.witnesses {
            self.witness(w);
        }
        for (k, c) in other.counters {
            *self.counters.entry(k).or_default() += c;
        }
        self
    }

    pub fn merge_all(parts: impl IntoIterator<Item = Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), Tally::merge)
    }

    pub fn into_report(self, mut header: ReportHeader, started: Instant) -> VerificationReport {
        for (k, c) in self.counters {
            header.parameters.insert(k, c.into());
        }
        let mut witness_sequences = Vec::new();
        for s in self
            .max
            .iter()
            .chain(self.min.iter())
            .map(|(_, s)| s.clone())
            .chain(self.witnesses)
        {
            if !witness_sequences.contains(&s) {
                witness_sequences.push(s);
            }
        }
        VerificationReport {
            theorem_id: header.theorem_id,
            seed_graph: header.seed_graph,
            level: header.level,
            parameters: header.parameters,
            checked: self.checked,
            passed: self.violation_count == 0,
            bound: header.bound,
            max_observed: self.max.map(|(v, _)| v),
            min_observed: self.min.map(|(v, _)| v),
            witness_sequences,
            violation_count: self.violation_count,
            violations: self.violations,
            skipped: self.skipped,
            wall_time_ms: started.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportHeader {
    pub theorem_id: String,
    pub seed_graph: String,
    pub level: usize,
    pub parameters: BTreeMap<String, Value>,
    pub bound: Option<f64>,
}

impl ReportHeader {
    pub fn new(theorem_id: &str, seed_graph: &str, level: usize) -> Self {
        Self {
            theorem_id: theorem_id.to_string(),
            seed_graph: seed_graph.to_string(),
            level,
            parameters: BTreeMap::new(),
            bound: None,
        }
    }

    pub fn bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }
}

/// Compact seed description: `n<order>:<u>-<v>,...`.
pub fn graph_label(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n{}:{}", g.n(), edges.join(","))
}
