//! Theorem checks over enumerated or sampled IIM graphs, addressable by id.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clique::{clique_lower_bound, clique_number_with_limit, find_non_adjacent_triple, trivial_clique_bound};
use crate::coloring::{chromatic_number, extend_coloring, find_rainbow_pair, DEFAULT_CHROMATIC_LIMIT};
use crate::distance::{verify_diameter_corollary, verify_diameter_theorem};
use crate::domination::{verify_domination_bound_general, verify_domination_kn};
use crate::enumerate::{tally_source, RunConfig, Source};
use crate::error::{IimError, Result};
use crate::graph::{Graph, VertexSet};
use crate::hamilton::{build_cycle_from_partition, find_ham_partition, hamiltonian_cycle, is_hamiltonian_cycle, HAMILTON_LIMIT};
use crate::iim::IimGraph;
use crate::report::{graph_label, ReportHeader, VerificationReport};
use crate::spectral::{expander_mixing_residual, spectral_gap, spectral_gap_without_isolates, volume};

/// Lower bound on the spectral gap from the fourth level on.
pub const GAP_BOUND: f64 = 1.0 / 15.0;
pub const GAP_TOLERANCE: f64 = 1e-9;
pub const MIXING_TOLERANCE: f64 = 1e-6;
/// Vertex limit for the exact clique solver inside the runners.
pub const RUNNER_CLIQUE_LIMIT: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    SpectralGap,
    Diameter,
    DiameterCorollary,
    DominationKn,
    DominationGeneral,
    CliqueBound,
    TripleExists,
    ColoringExtension,
    MixingLemma,
    HamPartition,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::SpectralGap,
        TheoremId::Diameter,
        TheoremId::DiameterCorollary,
        TheoremId::DominationKn,
        TheoremId::DominationGeneral,
        TheoremId::CliqueBound,
        TheoremId::TripleExists,
        TheoremId::ColoringExtension,
        TheoremId::MixingLemma,
        TheoremId::HamPartition,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::SpectralGap => "spectral-gap",
            TheoremId::Diameter => "diameter",
            TheoremId::DiameterCorollary => "diameter-corollary",
            TheoremId::DominationKn => "domination-kn",
            TheoremId::DominationGeneral => "domination-general",
            TheoremId::CliqueBound => "clique-bound",
            TheoremId::TripleExists => "triple-exists",
            TheoremId::ColoringExtension => "coloring-extension",
            TheoremId::MixingLemma => "mixing-lemma",
            TheoremId::HamPartition => "ham-partition",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = IimError;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| IimError::Precondition(format!("unknown theorem id '{s}'")))
    }
}

/// Everything a theorem run needs besides its id.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRequest {
    pub seed: Graph,
    pub seed_name: Option<String>,
    pub steps: usize,
    pub source: Source,
    pub cfg: RunConfig,
    /// Random vertex sets per graph for the mixing check.
    pub mixing_sets: usize,
    /// Seed for the mixing check's vertex sets.
    pub mixing_rng: u64,
}

impl VerifyRequest {
    pub fn new(seed: Graph, steps: usize) -> Self {
        Self {
            seed,
            seed_name: None,
            steps,
            source: Source::Exhaustive,
            cfg: RunConfig::default(),
            mixing_sets: 100,
            mixing_rng: 0,
        }
    }

    fn label(&self) -> String {
        self.seed_name.clone().unwrap_or_else(|| graph_label(&self.seed))
    }
}

pub fn run_theorem(id: TheoremId, req: &VerifyRequest) -> Result<VerificationReport> {
    let mut report = match id {
        TheoremId::SpectralGap => verify_spectral_gap(&req.seed, req.steps, &req.source, &req.cfg),
        TheoremId::Diameter => {
            if req.steps != 1 || req.source != Source::Exhaustive {
                return Err(IimError::Precondition(
                    "diameter covers one exhaustive step; use diameter-corollary for more".into(),
                ));
            }
            verify_diameter_theorem(&req.seed, &req.cfg)
        }
        TheoremId::DiameterCorollary => verify_diameter_corollary(&req.seed, req.steps, &req.source, &req.cfg),
        TheoremId::DominationKn => {
            let n = req.seed.n();
            if req.seed != Graph::complete(n) {
                return Err(IimError::Precondition("domination-kn needs a complete seed".into()));
            }
            verify_domination_kn(n, req.steps, &req.source, &req.cfg)
        }
        TheoremId::DominationGeneral => verify_domination_bound_general(&req.seed, req.steps, &req.source, &req.cfg),
        TheoremId::CliqueBound => verify_clique_bound(&req.seed, req.steps, &req.source, &req.cfg),
        TheoremId::TripleExists => verify_triple_exists(&req.seed, req.steps, &req.source, &req.cfg),
        TheoremId::ColoringExtension => verify_coloring_extension(&req.seed, req.steps, &req.source, &req.cfg),
        TheoremId::MixingLemma => verify_mixing_lemma(
            &req.seed,
            req.steps,
            &req.source,
            &req.cfg,
            req.mixing_sets,
            req.mixing_rng,
        ),
        TheoremId::HamPartition => verify_ham_partition(&req.seed, req.steps, &req.source, &req.cfg),
    }?;
    report.seed_graph = req.label();
    Ok(report)
}

/// Gap of the non-isolated part of every member; graphs with isolated vertices
/// are counted under `with_isolates`. The bound applies from four steps on.
pub fn verify_spectral_gap(g0: &Graph, steps: usize, source: &Source, cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let applies = steps >= 4;
    let tally = tally_source(g0, steps, source, cfg, |seq, h, t| {
        let m = match spectral_gap_without_isolates(h.graph()) {
            Ok(m) => m,
            Err(e) => return t.violation(seq.to_string(), e.to_string()),
        };
        if m.isolated > 0 {
            t.bump("with_isolates");
        }
        let Some(gap) = m.gap else { return t.skip() };
        t.observe(gap, || seq.to_string());
        if applies && gap < GAP_BOUND - GAP_TOLERANCE {
            t.violation(seq.to_string(), format!("gap {gap} below 1/15"));
        }
    })?;
    let mut header = ReportHeader::new("spectral-gap", &graph_label(g0), steps).param("tolerance", GAP_TOLERANCE);
    if applies {
        header = header.bound(GAP_BOUND);
    }
    Ok(tally.into_report(source.describe(header), started))
}

/// Exact `ω(H)` against the level formula and the clone-chain bound.
pub fn verify_clique_bound(g0: &Graph, steps: usize, source: &Source, cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let formula = clique_lower_bound(steps as i64);
    let chain = trivial_clique_bound(steps as i64);
    let tally = tally_source(g0, steps, source, cfg, |seq, h, t| {
        match clique_number_with_limit(h.graph(), RUNNER_CLIQUE_LIMIT) {
            Ok((w, _)) => {
                t.observe(w as f64, || seq.to_string());
                let w = w as i64;
                if w < formula {
                    t.violation(seq.to_string(), format!("omega {w} below formula {formula}"));
                } else if w < chain {
                    t.violation(seq.to_string(), format!("omega {w} below chain bound {chain}"));
                }
            }
            Err(e) => t.violation(seq.to_string(), e.to_string()),
        }
    })?;
    let header = ReportHeader::new("clique-bound", &graph_label(g0), steps)
        .bound(formula.max(chain).max(1) as f64)
        .param("formula", formula)
        .param("chain_bound", chain);
    Ok(tally.into_report(source.describe(header), started))
}

/// Every member contains a validated non-adjacent triple of `K_2`'s.
pub fn verify_triple_exists(g0: &Graph, steps: usize, source: &Source, cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let tally = tally_source(g0, steps, source, cfg, |seq, h, t| {
        t.count();
        match find_non_adjacent_triple(h.graph(), 2) {
            Ok(Some(tr)) => {
                if let Err(e) = tr.validate(h.graph(), true) {
                    t.violation(seq.to_string(), format!("triple fails validation: {e}"));
                }
            }
            Ok(None) => t.violation(seq.to_string(), "no non-adjacent triple of K_2's".into()),
            Err(e) => t.violation(seq.to_string(), e.to_string()),
        }
    })?;
    let header = ReportHeader::new("triple-exists", &graph_label(g0), steps).param("clique_size", 2);
    Ok(tally.into_report(source.describe(header), started))
}

/// Replays each member level by level from an optimal coloring of the seed:
/// the palette grows by at most one per level, by exactly one (keeping a
/// rainbow pair) when a rainbow pair is present, and `χ` grows by at most one.
pub fn verify_coloring_extension(
    g0: &Graph,
    steps: usize,
    source: &Source,
    cfg: &RunConfig,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let (chi0, col0) = chromatic_number(g0)?;
    let tally = tally_source(g0, steps, source, cfg, |seq, _, t| {
        let mut h = IimGraph::seed(g0.clone());
        let mut col = col0.clone();
        let mut chi = chi0;
        for (i, lc) in seq.levels.iter().enumerate() {
            let level = i + 1;
            let before = col.count;
            let rainbow = matches!(find_rainbow_pair(h.graph(), &col), Ok(Some(_)));
            let (next, c, palette) = match extend_coloring(&h, &col, lc) {
                Ok(x) => x,
                Err(e) => return t.violation(seq.to_string(), e.to_string()),
            };
            if palette > before + 1 {
                t.violation(seq.to_string(), format!("level {level}: palette {before} -> {palette}"));
            }
            if rainbow {
                if palette != before + 1 {
                    t.violation(seq.to_string(), format!("level {level}: rainbow pair but palette stayed {palette}"));
                }
                if !matches!(find_rainbow_pair(next.graph(), &c), Ok(Some(_))) {
                    t.violation(seq.to_string(), format!("level {level}: rainbow pair lost"));
                }
            }
            if next.n() <= DEFAULT_CHROMATIC_LIMIT {
                let next_chi = chromatic_number(next.graph()).expect("within limit").0;
                if next_chi > chi + 1 {
                    t.violation(seq.to_string(), format!("level {level}: chi {chi} -> {next_chi}"));
                }
                chi = next_chi;
            }
            h = next;
            col = c;
        }
        t.observe(col.count as f64, || seq.to_string());
    })?;
    let header = ReportHeader::new("coloring-extension", &graph_label(g0), steps)
        .bound((chi0 + steps) as f64)
        .param("chi_seed", chi0);
    Ok(tally.into_report(source.describe(header), started))
}

/// Expander-mixing residual on `sets` random vertex subsets of each member,
/// plus the empty set, the full set and the top level. Graphs with isolated
/// vertices are skipped.
pub fn verify_mixing_lemma(
    g0: &Graph,
    steps: usize,
    source: &Source,
    cfg: &RunConfig,
    sets: usize,
    rng_seed: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let tally = tally_source(g0, steps, source, cfg, |seq, h, t| {
        let g = h.graph();
        if !g.isolated_vertices().is_empty() || g.n() < 2 {
            return t.skip();
        }
        let gap = match spectral_gap(g) {
            Ok(gap) => gap,
            Err(e) => return t.violation(seq.to_string(), e.to_string()),
        };
        t.bump("graphs_checked");
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed ^ seq.to_index().rotate_left(17));
        let mut xs = vec![VertexSet::new(g.n()), g.vertex_set(), h.level_set(h.top_level())];
        for _ in 0..sets {
            xs.push(VertexSet::from_ids(g.n(), (0..g.n()).filter(|_| rng.random_bool(0.5))));
        }
        for x in &xs {
            let r = expander_mixing_residual(g, x, gap);
            t.observe(r, || seq.to_string());
            if r < -MIXING_TOLERANCE {
                t.violation(
                    seq.to_string(),
                    format!("residual {r} for X = {:?} (vol {})", x.to_vec(), volume(g, x)),
                );
            }
        }
    })?;
    let header = ReportHeader::new("mixing-lemma", &graph_label(g0), steps)
        .bound(-MIXING_TOLERANCE)
        .param("sets_per_graph", sets)
        .param("set_rng", rng_seed);
    Ok(tally.into_report(source.describe(header), started))
}

/// Whenever the partition search succeeds, the built cycle must validate and,
/// within the exact solver's limit, the solver must agree.
pub fn verify_ham_partition(g0: &Graph, steps: usize, source: &Source, cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    if steps == 0 {
        return Err(IimError::Precondition("ham-partition needs at least one step".into()));
    }
    let tally = tally_source(g0, steps, source, cfg, |seq, h, t| {
        t.count();
        let p = match find_ham_partition(h) {
            Ok(Some(p)) => p,
            Ok(None) => return,
            Err(e) => return t.violation(seq.to_string(), e.to_string()),
        };
        t.bump("partitions_found");
        t.witness(seq.to_string());
        match build_cycle_from_partition(h, &p) {
            Ok(c) if is_hamiltonian_cycle(h.graph(), &c) => {}
            Ok(_) => t.violation(seq.to_string(), "built cycle is invalid".into()),
            Err(e) => t.violation(seq.to_string(), e.to_string()),
        }
        if h.n() <= HAMILTON_LIMIT {
            t.bump("solver_checked");
            if !matches!(hamiltonian_cycle(h.graph()), Ok(Some(_))) {
                t.violation(seq.to_string(), "exact solver finds no cycle".into());
            }
        }
    })?;
    let header = ReportHeader::new("ham-partition", &graph_label(g0), steps);
    Ok(tally.into_report(source.describe(header), started))
}
