use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dpbloom::analysis::fpr_exact;
use dpbloom::harness::{
    parse_queries, read_dataset, run_experiment, write_calibration, ExperimentConfig, FilterFile,
    TokenMode,
};
use dpbloom::{
    configure_threads_from_env, derive_budget, dist_w, privatize, quantile_n, BloomFilter, Error,
    FilterParams, Result,
};

/// Differentially private Bloom filters.
#[derive(Parser)]
#[command(name = "dpbloom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a plain filter from a newline-delimited dataset.
    Build(BuildArgs),
    /// Flip the bits of a plain filter under an (ε, δ) budget.
    Privatize(PrivatizeArgs),
    /// Query a filter file.
    Query(QueryArgs),
    /// Write the W distribution and the quantile N as CSV.
    Calibrate(CalibrateArgs),
    /// Run an experiment described by a config file.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Dataset file, one element per line.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    /// Universe size; elements must lie in [0, n).
    #[arg(long, default_value_t = u64::MAX)]
    n: u64,
    /// Hash seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hash non-numeric tokens into the universe instead of rejecting them.
    #[arg(long)]
    hash_tokens: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PrivatizeArgs {
    /// Plain filter file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    delta: f64,
    /// Seed of the bit-flip stream.
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct QueryArgs {
    /// Filter file (plain or private).
    #[arg(long)]
    filter: PathBuf,
    /// File with one query per line.
    #[arg(long, conflicts_with = "value", required_unless_present = "value")]
    queries: Option<PathBuf>,
    /// A single query.
    #[arg(long)]
    value: Option<String>,
    #[arg(long)]
    hash_tokens: bool,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    k: usize,
    /// Dataset size |A|.
    #[arg(long)]
    size: u64,
    #[arg(long)]
    delta: f64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; overrides `out` in the config, stdout when neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    configure_threads_from_env();
    let outcome = match cli.command {
        Command::Build(a) => build(a),
        Command::Privatize(a) => privatize_cmd(a),
        Command::Query(a) => query(a),
        Command::Calibrate(a) => calibrate(a),
        Command::Experiment(a) => experiment(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dpbloom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn token_mode(hash_tokens: bool) -> TokenMode {
    if hash_tokens {
        TokenMode::HashText
    } else {
        TokenMode::Numeric
    }
}

fn build(a: BuildArgs) -> Result<()> {
    let params = FilterParams::new(a.m, a.k, a.n, a.seed)?;
    let data = read_dataset(&a.input, a.n, token_mode(a.hash_tokens))?;
    let filter = BloomFilter::build(params, &data)?;
    let fpr = fpr_exact(a.m as u64, a.k, filter.inserted_count())?;
    let summary = format!(
        "m={}\nk={}\nA={}\nload_factor={}\nfpr_exact={fpr}",
        a.m,
        a.k,
        filter.inserted_count(),
        filter.load_factor()
    );
    FilterFile::Plain(filter).save(&a.out)?;
    println!("{summary}");
    Ok(())
}

fn privatize_cmd(a: PrivatizeArgs) -> Result<()> {
    let filter = match FilterFile::load(&a.input)? {
        FilterFile::Plain(f) => f,
        FilterFile::Private(_) => return Err(Error::Domain(format!(
            "{} is already privatized; flipping it again would void the stated (ε, δ) guarantee",
            a.input.display()
        ))),
    };
    let p = filter.params();
    let budget = derive_budget(a.epsilon, a.delta, p.m as u64, p.k, filter.inserted_count())?;
    let private = privatize(&filter, &budget, a.seed)?;
    FilterFile::Private(private).save(&a.out)?;
    println!("N={}\neps0={}", budget.n_quantile(), budget.epsilon0());
    Ok(())
}

fn query(a: QueryArgs) -> Result<()> {
    let filter = FilterFile::load(&a.filter)?;
    let text = match (&a.queries, &a.value) {
        (Some(path), _) => fs::read_to_string(path)?,
        (None, Some(v)) => v.clone(),
        (None, None) => unreachable!("clap requires one of --queries/--value"),
    };
    let (ok, bad) = parse_queries(&text, filter.params().n, token_mode(a.hash_tokens));
    for b in &bad {
        eprintln!("line {}: {}", b.line, b.message);
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut positives = 0u64;
    for (token, y) in &ok {
        let hit = filter.query(*y)?;
        positives += hit as u64;
        writeln!(out, "{token},{}", hit as u8)?;
    }
    let rate = if ok.is_empty() {
        0.0
    } else {
        positives as f64 / ok.len() as f64
    };
    writeln!(
        out,
        "# queries={} positives={positives} positive_rate={rate} malformed={}",
        ok.len(),
        bad.len()
    )?;
    out.flush()?;
    Ok(())
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn calibrate(a: CalibrateArgs) -> Result<()> {
    let dist = dist_w(a.m, a.k, a.size)?;
    quantile_n(&dist, a.delta)?;
    let mut out = open_output(a.out.as_deref())?;
    write_calibration(&dist, a.delta, &mut out)?;
    out.flush()?;
    Ok(())
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let cfg = ExperimentConfig::load(&a.config)?;
    let mut out = open_output(a.out.as_deref().or(cfg.out.as_deref()))?;
    let summary = run_experiment(&cfg, &mut out)?;
    out.flush()?;
    if !summary.failures.is_empty() {
        return Err(Error::Domain(format!(
            "{} of {} grid points failed",
            summary.failures.len(),
            summary.points
        )));
    }
    Ok(())
}
