use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use iim_core::enumerate::{default_workers, sample_iim, RunConfig, Source};
use iim_core::io::{parse_edge_list, to_dot, write_edge_list, GenealogyDocument};
use iim_core::seeds::named_seed;
use iim_core::verify::{run_theorem, TheoremId, VerifyRequest};
use iim_core::{iim_generate, ChoiceSequence, Graph};

mod analyze;

#[derive(Parser, Debug)]
#[command(name = "iim", version, about = "Generate, analyze and check Iterated Independent Model graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grow a seed graph and write its edge list, DOT and genealogy JSON.
    Generate(GenerateArgs),
    /// Run one theorem check over enumerated or sampled graphs.
    Verify(VerifyArgs),
    /// Print exact graph invariants for an edge-list file.
    Analyze(AnalyzeArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SeedArgs {
    /// Built-in seed: K1..K8, P2..P8, C3..C8, 2K1, K2uK2uK1.
    #[arg(long)]
    seed: Option<String>,
    /// Seed graph as an edge-list file.
    #[arg(long, value_name = "PATH")]
    seed_file: Option<PathBuf>,
}

impl SeedArgs {
    fn load(&self) -> Result<(String, Graph)> {
        match (&self.seed, &self.seed_file) {
            (Some(name), _) => Ok((name.clone(), named_seed(name)?)),
            (None, Some(path)) => {
                let g = read_graph(path)?;
                let stem = path.file_stem().map_or("seed".into(), |s| s.to_string_lossy().into_owned());
                Ok((stem, g))
            }
            (None, None) => bail!("one of --seed or --seed-file is required"),
        }
    }
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    seed: SeedArgs,
    /// Growth steps.
    #[arg(long)]
    steps: usize,
    /// Choice string such as `L1=0x1;L2=0x2`; bit `v` set anticlones vertex `v`.
    #[arg(long, conflicts_with = "random")]
    choices: Option<String>,
    /// Clone probability for random choices.
    #[arg(long, requires = "rng")]
    random: Option<f64>,
    #[arg(long)]
    rng: Option<u64>,
    /// Directory for `<name>.edges`, `<name>.dot` and `<name>.json`.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, default_value = "graph")]
    name: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// spectral-gap, diameter, diameter-corollary, domination-kn,
    /// domination-general, clique-bound, triple-exists, coloring-extension,
    /// mixing-lemma or ham-partition.
    #[arg(value_parser = parse_theorem)]
    theorem: TheoremId,
    #[command(flatten)]
    seed: SeedArgs,
    /// Growth steps.
    #[arg(long)]
    steps: usize,
    /// Check this many seeded random draws instead of the whole family.
    #[arg(long, conflicts_with = "prefix")]
    samples: Option<u64>,
    /// Clone probability for sampled draws.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Check only the first N members in enumeration order.
    #[arg(long)]
    prefix: Option<u64>,
    /// Seed for sampled draws and random vertex sets.
    #[arg(long)]
    rng: Option<u64>,
    /// Random vertex sets per graph for mixing-lemma.
    #[arg(long, default_value_t = 100)]
    sets: usize,
    /// Largest enumeration, in choice bits.
    #[arg(long, env = "IIM_BUDGET", default_value_t = iim_core::enumerate::DEFAULT_BIT_BUDGET)]
    budget: usize,
    /// Worker threads; reports do not depend on it.
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
    /// Directory for the report and, on failure, the witness file.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Edge-list file, or `-` for standard input.
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn parse_theorem(s: &str) -> std::result::Result<TheoremId, String> {
    s.parse().map_err(|e: iim_core::IimError| e.to_string())
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn generate(args: &GenerateArgs) -> Result<ExitCode> {
    let (_, g0) = args.seed.load()?;
    let seq = match (&args.choices, args.random, args.rng) {
        (Some(s), _, _) => ChoiceSequence::parse(s, g0.n())?,
        (None, Some(p), Some(rng)) => {
            sample_iim(&g0, args.steps, p, rng)?.0
        }
        _ => bail!("give --choices, or --random with --rng"),
    };
    if seq.steps() != args.steps {
        bail!("choice string has {} levels, --steps is {}", seq.steps(), args.steps);
    }
    let h = iim_generate(&g0, &seq)?;
    let edges = write_edge_list(h.graph());
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(format!("{}.edges", args.name)), &edges)?;
        fs::write(dir.join(format!("{}.dot", args.name)), to_dot(h.graph(), Some(&h)))?;
        fs::write(dir.join(format!("{}.json", args.name)), GenealogyDocument::from_iim(&h).to_json())?;
    }
    print!("{edges}");
    eprintln!("choices {seq}");
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let (label, g0) = args.seed.load()?;
    let source = match (args.samples, args.prefix) {
        (Some(samples), _) => {
            let Some(seed) = args.rng else {
                bail!("sampled verification needs an explicit --rng");
            };
            Source::Sampled {
                p: args.p,
                seed,
                samples,
            }
        }
        (None, Some(count)) => Source::Prefix(count),
        (None, None) => Source::Exhaustive,
    };
    let mixing_rng = match (args.theorem, args.rng) {
        (TheoremId::MixingLemma, None) => bail!("mixing-lemma draws random vertex sets and needs an explicit --rng"),
        (_, rng) => rng.unwrap_or(0),
    };
    let req = VerifyRequest {
        seed: g0,
        seed_name: Some(label.clone()),
        steps: args.steps,
        source,
        cfg: RunConfig {
            budget_bits: args.budget,
            workers: args.workers.max(1),
        },
        mixing_sets: args.sets,
        mixing_rng,
    };
    let report = run_theorem(args.theorem, &req)?;
    let json = report.to_json();
    println!("{json}");
    let stem = format!("{}_{}_l{}", args.theorem, label, args.steps);
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(format!("{stem}.json")), format!("{json}\n"))?;
    }
    if report.passed {
        eprintln!("{}: passed ({} checked, {} skipped)", args.theorem, report.checked, report.skipped);
        return Ok(ExitCode::SUCCESS);
    }
    let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let path = dir.join(format!("{stem}.witnesses.txt"));
    let lines: String = report
        .violations
        .iter()
        .map(|v| format!("{}\t{}\n", v.sequence, v.detail))
        .collect();
    fs::write(&path, lines)?;
    eprintln!(
        "{}: {} violations, witnesses in {}",
        args.theorem,
        report.violation_count,
        path.display()
    );
    Ok(ExitCode::from(1))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Verify(a) => verify(a),
        Command::Analyze(a) => read_graph(&a.graph).map(|g| {
            let table = analyze::analyze(&g);
            match a.format {
                Format::Json => println!("{}", analyze::to_json(&table)),
                Format::Csv => print!("{}", analyze::to_csv(&table)),
            }
            ExitCode::SUCCESS
        }),
    };
    run.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
