//! The `infbin` command line.
//!
//! Exit status: 0 success, 2 usage or parse error, 3 domain error, 4 resource
//! cap exceeded, 5 verification failure.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infbin_core::automaton::DEFAULT_SUBSET_BUDGET;
use infbin_core::oracle::{verify_all, verify_lemma_report};
use infbin_core::simulate::{
    estimate_stationary, run_chain, run_chain_observed, run_two_chain_coupling, RunOptions,
    TwoChainOptions, Watch,
};
use infbin_core::{
    Configuration, CouplingPlan, DistributionSpec, Error, LazyInfiniteConfiguration, MoveWord,
    VerificationReport,
};
use serde::Serialize;

use crate::csv_out::SeriesWriter;
use crate::parallel::{build_automaton, Pool, RayonMap, RayonRunner};
use crate::records::{
    PlanRecord, SimulationRecord, StationaryRecord, SyncRecord, TwoChainRecord, VerificationRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "infbin", version, about = "Coupling words and simulation for the infinite-bin model")]
pub struct Cli {
    /// Worker threads (default: machine parallelism).
    #[arg(long, global = true, env = "INFBIN_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a word to a configuration (`[..]` or `base:B[:[..]]`).
    Apply { config: String, word: String },
    /// Print the coupling plan for (k, l, N).
    Construct(ConstructArgs),
    /// Exhaustively verify the lemmas and the coupling for (k, l, N).
    Verify(VerifyArgs),
    /// Lemma checks for one pair or a sweep, as JSON lines.
    Lemmas(LemmasArgs),
    /// Search for a synchronizing word of the l-configuration automaton.
    Sync(SyncArgs),
    /// Simulate the chain driven by i.i.d. moves.
    Simulate(SimulateArgs),
    /// Two chains on shared noise.
    Couple2(Couple2Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(short)]
    pub k: u64,
    #[arg(short)]
    pub l: u64,
    #[arg(short = 'N')]
    pub n: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(short)]
    pub k: u64,
    #[arg(short)]
    pub l: u64,
    /// Defaults to l.
    #[arg(short = 'N')]
    pub n: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    #[arg(short, required_unless_present = "sweep_l_max", requires = "l")]
    pub k: Option<u64>,
    #[arg(short, required_unless_present = "sweep_l_max", requires = "k")]
    pub l: Option<u64>,
    /// Every pair 2 <= k < l <= this value.
    #[arg(long, conflicts_with_all = ["k", "l"])]
    pub sweep_l_max: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SyncArgs {
    #[arg(short)]
    pub l: u64,
    /// Letters of the alphabet, comma separated.
    #[arg(short, value_delimiter = ',', required_unless_present = "k")]
    pub a: Vec<u64>,
    /// Use the alphabet {k, l}.
    #[arg(short, conflicts_with = "a")]
    pub k: Option<u64>,
    #[arg(long, conflicts_with = "greedy")]
    pub exact: bool,
    #[arg(long)]
    pub greedy: bool,
    /// Maximum number of subsets explored by --exact.
    #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
    pub budget: usize,
    /// Move law for the probability/length statistic.
    #[arg(short, long)]
    pub dist: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// `det:c`, `unif:a,b,..` or `cat:a@p,b@q,..`.
    #[arg(short, long)]
    pub dist: String,
    #[arg(short = 'n', long)]
    pub steps: u64,
    #[arg(short, long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "base:1")]
    pub initial: String,
    /// Watch the coupling word for (k, l).
    #[arg(long, value_delimiter = ',', num_args = 1, value_names = ["K,L"])]
    pub watch: Vec<u64>,
    /// Run two chains on shared noise from these initial configurations.
    #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "stationary")]
    pub two_chain: Vec<String>,
    /// Compare end-of-run top-bin laws from these initial configurations.
    #[arg(long, num_args = 1.., value_name = "INIT")]
    pub stationary: Vec<String>,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Independent replicas for TV estimates.
    #[arg(long, default_value_t = 0)]
    pub replicas: u64,
    /// Steps between CSV rows.
    #[arg(long, default_value_t = 1)]
    pub csv_every: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Couple2Args {
    pub a: String,
    pub b: String,
    #[arg(short, long)]
    pub dist: String,
    #[arg(short = 'n', long)]
    pub steps: u64,
    #[arg(short, long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', num_args = 1, value_names = ["K,L"])]
    pub watch: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub replicas: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Verification(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::InvalidParams { .. } => EXIT_USAGE,
                Error::UniverseTooLarge { .. } | Error::SubsetSpaceTooLarge { .. } => EXIT_CAP,
                _ => EXIT_DOMAIN,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) => f.write_str(m),
            CliError::Core(e @ Error::SubsetSpaceTooLarge { .. }) => {
                write!(f, "{e}; try --greedy")
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult = Result<(), CliError>;

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> CliResult {
    let pool = Pool::new(cli.threads).map_err(|e| CliError::Usage(e.to_string()))?;
    match cli.command {
        Command::Apply { config, word } => cmd_apply(&config, &word, out),
        Command::Construct(a) => cmd_construct(&a, out),
        Command::Verify(a) => cmd_verify(&a, &pool, out),
        Command::Lemmas(a) => cmd_lemmas(&a, &pool, out),
        Command::Sync(a) => cmd_sync(&a, &pool, out),
        Command::Simulate(a) => cmd_simulate(&a, &pool, out),
        Command::Couple2(a) => {
            let init = [a.a.clone(), a.b.clone()];
            let watch = a.watch.clone();
            two_chain(&a.dist, a.steps, a.seed, &init, &watch, a.depth, a.replicas, a.format, &pool, out)
        }
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn only_json_or_text(format: Format) -> CliResult {
    if format == Format::Csv {
        return Err(CliError::Usage("csv output is only available for single-chain simulate".into()));
    }
    Ok(())
}

fn cmd_apply(config: &str, word: &str, out: &mut dyn Write) -> CliResult {
    let word: MoveWord = word.parse()?;
    if config.trim_start().starts_with("base:") {
        let x: LazyInfiniteConfiguration = config.parse()?;
        writeln!(out, "{}", word.apply_infinite(&x))?;
    } else {
        let x: Configuration = config.parse()?;
        writeln!(out, "{}", word.apply(&x)?)?;
    }
    Ok(())
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write) -> CliResult {
    only_json_or_text(a.format)?;
    let plan = CouplingPlan::build(a.k, a.l, a.n)?;
    let rec = PlanRecord::from(&plan);
    if a.format == Format::Text {
        writeln!(out, "word    {}", rec.word)?;
        writeln!(out, "length  {} (bound {})", rec.length, rec.bound)?;
        writeln!(out, "target  {} on {} balls", rec.target, rec.coupled_balls)?;
        return Ok(());
    }
    write_json(out, &rec)
}

fn write_report(report: &VerificationReport, format: Format, out: &mut dyn Write) -> CliResult {
    let rec = VerificationRecord::from(report);
    if format == Format::Text {
        let n = rec.n.map(|n| format!(" N={n}")).unwrap_or_default();
        writeln!(out, "k={} l={}{} universe {}", rec.k, rec.l, n, rec.universe_size)?;
        for c in &rec.checks {
            let verdict = if c.passed { "ok" } else { "FAILED" };
            write!(out, "  {:<18} {:>8} cases  {verdict}", c.name, c.cases)?;
            if let Some(d) = &c.details {
                write!(out, "  {}: {d}", c.counterexample.as_deref().unwrap_or("-"))?;
            }
            writeln!(out)?;
        }
        return Ok(());
    }
    write_json(out, &rec)
}

fn cmd_verify(a: &VerifyArgs, pool: &Pool, out: &mut dyn Write) -> CliResult {
    only_json_or_text(a.format)?;
    let n = a.n.unwrap_or(a.l);
    let start = Instant::now();
    let mut report = pool.install(|| verify_all(a.k, a.l, n, &RayonRunner))?;
    report.elapsed = start.elapsed();
    write_report(&report, a.format, out)?;
    if !report.passed() {
        return Err(CliError::Verification(format!("verification failed for k={} l={}", a.k, a.l)));
    }
    Ok(())
}

fn cmd_lemmas(a: &LemmasArgs, pool: &Pool, out: &mut dyn Write) -> CliResult {
    let pairs: Vec<(u64, u64)> = match (a.k, a.l, a.sweep_l_max) {
        (Some(k), Some(l), None) => vec![(k, l)],
        (None, None, Some(max)) => (3..=max).flat_map(|l| (2..l).map(move |k| (k, l))).collect(),
        _ => return Err(CliError::Usage("give -k and -l, or --sweep-l-max".into())),
    };
    let mut failed = 0;
    for (k, l) in pairs {
        let start = Instant::now();
        let mut report = pool.install(|| verify_lemma_report(k, l, &RayonRunner))?;
        report.elapsed = start.elapsed();
        if !report.passed() {
            failed += 1;
        }
        write_json(out, &VerificationRecord::from(&report))?;
        out.flush()?;
    }
    if failed > 0 {
        return Err(CliError::Verification(format!("{failed} pair(s) failed")));
    }
    Ok(())
}

fn cmd_sync(a: &SyncArgs, pool: &Pool, out: &mut dyn Write) -> CliResult {
    only_json_or_text(a.format)?;
    let alphabet = match a.k {
        Some(k) => vec![k, a.l],
        None => a.a.clone(),
    };
    let dist: Option<DistributionSpec> = a.dist.as_deref().map(str::parse).transpose()?;
    let automaton = pool.install(|| build_automaton(a.l, &alphabet))?;
    let result = if a.greedy {
        automaton.greedy_sync()?
    } else {
        automaton.shortest_sync_exact(a.budget)?
    };
    let rec = SyncRecord::new(a.l, automaton.alphabet(), &result, dist.as_ref());
    if a.format == Format::Text {
        writeln!(out, "{} word of length {}: {}", rec.method, rec.length, rec.word)?;
        writeln!(out, "terminal {}", rec.terminal)?;
        return Ok(());
    }
    write_json(out, &rec)
}

fn parse_watch(watch: &[u64]) -> Result<Option<CouplingPlan>, CliError> {
    match watch {
        [] => Ok(None),
        [k, l] => Ok(Some(CouplingPlan::build(*k, *l, *l)?)),
        _ => Err(CliError::Usage("--watch takes k,l".into())),
    }
}

fn cmd_simulate(a: &SimulateArgs, pool: &Pool, out: &mut dyn Write) -> CliResult {
    if !a.two_chain.is_empty() {
        return two_chain(
            &a.dist, a.steps, a.seed, &a.two_chain, &a.watch, a.depth, a.replicas, a.format, pool, out,
        );
    }
    let dist: DistributionSpec = a.dist.parse()?;
    if !a.stationary.is_empty() {
        only_json_or_text(a.format)?;
        let initials = a
            .stationary
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<LazyInfiniteConfiguration>, _>>()?;
        let replicas = if a.replicas == 0 { 100 } else { a.replicas };
        let est = pool.install(|| {
            estimate_stationary(&dist, a.depth, &initials, replicas, a.steps, a.seed, &RayonMap)
        })?;
        let rec = StationaryRecord::from(&est);
        if a.format == Format::Text {
            for p in &rec.pairs {
                writeln!(out, "{} vs {}: tv {:.4} (noise {:.4})", p.a, p.b, p.tv, p.noise_sigma)?;
            }
            return Ok(());
        }
        return write_json(out, &rec);
    }

    let initial: LazyInfiniteConfiguration = a.initial.parse()?;
    let plan = parse_watch(&a.watch)?;
    let options = RunOptions { depth: a.depth, watch: plan.as_ref().map(Watch::from_plan) };
    if a.format == Format::Csv {
        let mut series = SeriesWriter::new(&mut *out, a.depth, a.csv_every)?;
        let mut failure = None;
        run_chain_observed(&initial, &dist, a.steps, a.seed, &options, &mut |s| {
            if failure.is_none() {
                failure = series.observe(s).err();
            }
        })?;
        if let Some(e) = failure {
            return Err(e.into());
        }
        series.finish()?;
        return Ok(());
    }
    let report = run_chain(&initial, &dist, a.steps, a.seed, &options)?;
    let rec = SimulationRecord::new(&report, plan.map(|p| p.word.to_string()));
    if a.format == Format::Text {
        writeln!(out, "steps {}  bins created {}", rec.steps, rec.bins_created)?;
        writeln!(out, "front speed {}", rec.front_speed_estimate)?;
        writeln!(out, "regenerations {}", rec.regeneration_times.len())?;
        if let Some(p) = rec.detected_period {
            writeln!(out, "period {p}")?;
        }
        return Ok(());
    }
    write_json(out, &rec)
}

#[allow(clippy::too_many_arguments)]
fn two_chain(
    dist: &str,
    steps: u64,
    seed: u64,
    initials: &[String],
    watch: &[u64],
    depth: usize,
    replicas: u64,
    format: Format,
    pool: &Pool,
    out: &mut dyn Write,
) -> CliResult {
    only_json_or_text(format)?;
    let dist: DistributionSpec = dist.parse()?;
    let a: LazyInfiniteConfiguration = initials[0].parse()?;
    let b: LazyInfiniteConfiguration = initials[1].parse()?;
    let plan = parse_watch(watch)?;
    let options = TwoChainOptions {
        depth,
        watch: plan.as_ref().map(|p| p.word.clone()),
        replicas,
        checkpoints: Vec::new(),
    };
    let report = pool.install(|| run_two_chain_coupling(&a, &b, &dist, steps, seed, &options, &RayonMap))?;
    let rec = TwoChainRecord::new(&report, plan.map(|p| p.word.to_string()));
    if format == Format::Text {
        match rec.agreement_time {
            Some(t) => writeln!(out, "projections on {} balls agree from step {t}", rec.coupled_balls)?,
            None => writeln!(out, "projections on {} balls never agreed", rec.coupled_balls)?,
        }
        writeln!(out, "agreement persisted: {}", rec.agreement_persisted)?;
        return Ok(());
    }
    write_json(out, &rec)
}
