//! `ssmc`: solve DIMACS MAX-SAT files and run the scripted experiments.
//!
//! Exit codes: 0 success, 10 population extinction, 20 unreadable or
//! malformed input, 30 invalid configuration, 1 output failure.

use clap::{Args, Parser, Subcommand};
use ssmc_core::experiments::{
    fit_p1_at_end, oracle_sweep, report_lines, run_bench, run_obstruction, write_bench_csv, write_obstruction_csv,
    write_oracle_csv, BenchConfig, Budget, ExperimentError, ObstructConfig, OracleSweepConfig, SolveSummary,
};
use ssmc_core::maxsat::{parse_dimacs, solve_maxsat, RuntimeCoefficients, SolveConfig, SolveError};
use ssmc_core::oracle::Example;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_EXTINCT: u8 = 10;
const EXIT_PARSE: u8 = 20;
const EXIT_CONFIG: u8 = 30;
const EXIT_OUTPUT: u8 = 1;

#[derive(Parser)]
#[command(name = "ssmc", version, about = "Substochastic Monte Carlo solver and experiments")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a DIMACS CNF file as unweighted MAX-SAT.
    Solve(SolveArgs),
    /// Exact spectra of the ramp (0) or spiked (1) hypercube Hamiltonian.
    Oracle(OracleArgs),
    /// Walker first-hit statistics on the spiked potential.
    Obstruct(ObstructArgs),
    /// Random MAX-k-SAT timing and success runs.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RuntimeArgs {
    /// Slope of ln T in n; needs --intercept.
    #[arg(long, requires = "intercept")]
    slope: Option<f64>,
    /// Intercept of ln T; needs --slope.
    #[arg(long, requires = "slope")]
    intercept: Option<f64>,
}

impl RuntimeArgs {
    fn coefficients(&self) -> Option<RuntimeCoefficients> {
        Some(RuntimeCoefficients { slope: self.slope?, intercept: self.intercept? })
    }
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 16)]
    walkers: usize,
    /// Steps T; default derived from the clause width.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    offset_gain: f64,
    #[command(flatten)]
    runtime: RuntimeArgs,
    /// Write a JSON summary here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    example: u8,
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "n_range")]
    n: Vec<u32>,
    /// Dimensions as start:end:step, end inclusive.
    #[arg(long)]
    n_range: Option<String>,
    #[arg(long, default_value_t = ssmc_core::model::DEFAULT_SPIKE)]
    c: f64,
    /// Schedule values, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "s_points")]
    s_grid: Vec<f64>,
    /// Equally spaced schedule values from 0 to 1.
    #[arg(long)]
    s_points: Option<usize>,
    /// CSV destination (default stdout).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print the fit of p1_zero(s=1) = A + B/sqrt(n) to stderr.
    #[arg(long)]
    fit: bool,
}

#[derive(Args)]
struct ObstructArgs {
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [16u32, 24, 32, 48, 64])]
    n: Vec<u32>,
    /// Walkers = round(walkers * n^walkers_exp).
    #[arg(long, default_value_t = 16.0)]
    walkers: f64,
    #[arg(long, default_value_t = 0.0)]
    walkers_exp: f64,
    /// Steps = round(steps * n^steps_exp).
    #[arg(long, default_value_t = 1000.0)]
    steps: f64,
    #[arg(long, default_value_t = 0.0)]
    steps_exp: f64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = ssmc_core::model::DEFAULT_SPIKE)]
    c: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=4))]
    k: u64,
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [10usize, 12, 14, 16, 18, 20])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    walkers: usize,
    /// Clauses per variable (default 3.0 for k=2, 4.26 for k=3).
    #[arg(long)]
    ratio: Option<f64>,
    #[command(flatten)]
    runtime: RuntimeArgs,
    #[arg(long, default_value_t = 24)]
    verify_limit: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl std::fmt::Display) -> Self {
        Self { code, message: message.to_string() }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        let code = match e {
            ExperimentError::Io(_) | ExperimentError::Csv(_) | ExperimentError::Json(_) => EXIT_OUTPUT,
            _ => EXIT_CONFIG,
        };
        Failure::new(code, e)
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::new(EXIT_OUTPUT, format!("{}: {e}", p.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn finish(mut out: Box<dyn Write>) -> Result<(), Failure> {
    out.flush().map_err(|e| Failure::new(EXIT_OUTPUT, e))
}

fn parse_range(text: &str) -> Result<Vec<u32>, Failure> {
    let parts: Vec<u32> = text
        .split(':')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::new(EXIT_CONFIG, format!("bad --n-range {text:?}: {e}")))?;
    match parts[..] {
        [start, end, step] if step > 0 && start <= end => Ok((start..=end).step_by(step as usize).collect()),
        _ => Err(Failure::new(EXIT_CONFIG, format!("--n-range must be start:end:step with step > 0, got {text:?}"))),
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.file.display())))?;
    let formula = parse_dimacs(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.file.display())))?;
    let cfg = SolveConfig {
        walkers: args.walkers,
        steps: args.steps,
        coefficients: args.runtime.coefficients(),
        seed: args.seed,
        offset_gain: args.offset_gain,
        ..SolveConfig::default()
    };
    let outcome = solve_maxsat(&formula, &cfg).map_err(|e| match e {
        SolveError::EmptyFormula => Failure::new(EXIT_PARSE, e),
        _ => Failure::new(EXIT_CONFIG, e),
    })?;
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    for line in report_lines(&formula, &outcome) {
        writeln!(lock, "{line}").map_err(|e| Failure::new(EXIT_OUTPUT, e))?;
    }
    if let Some(path) = &args.output {
        let summary = SolveSummary::new(&formula, &cfg, &outcome)?;
        let mut out = open_output(Some(path))?;
        serde_json::to_writer_pretty(&mut out, &summary).map_err(|e| Failure::new(EXIT_OUTPUT, e))?;
        writeln!(out).map_err(|e| Failure::new(EXIT_OUTPUT, e))?;
        finish(out)?;
    }
    Ok(if outcome.extinct() { EXIT_EXTINCT } else { 0 })
}

fn cmd_oracle(args: &OracleArgs) -> Result<u8, Failure> {
    let ns = match &args.n_range {
        Some(r) => parse_range(r)?,
        None => args.n.clone(),
    };
    let s_grid = match args.s_points {
        Some(k) if k >= 2 => (0..k).map(|i| i as f64 / (k - 1) as f64).collect(),
        Some(_) => return Err(Failure::new(EXIT_CONFIG, "--s-points needs at least 2")),
        None => args.s_grid.clone(),
    };
    let cfg = OracleSweepConfig {
        example: Example::from_index(args.example).expect("range checked by clap"),
        ns,
        c: args.c,
        s_grid,
    };
    let rows = oracle_sweep(&cfg)?;
    let mut out = open_output(args.output.as_deref())?;
    write_oracle_csv(&mut out, &cfg, &rows)?;
    finish(out)?;
    if args.fit {
        match fit_p1_at_end(&rows) {
            Some((a, b)) => eprintln!("p1_zero(s=1) ~ {a:.4} + {b:.4}/sqrt(n)"),
            None => eprintln!("fit needs s=1 in the grid and at least two n"),
        }
    }
    Ok(0)
}

fn cmd_obstruct(args: &ObstructArgs) -> Result<u8, Failure> {
    let cfg = ObstructConfig {
        ns: args.n.clone(),
        walkers: Budget { coef: args.walkers, exponent: args.walkers_exp },
        steps: Budget { coef: args.steps, exponent: args.steps_exp },
        trials: args.trials,
        seed: args.seed,
        c: args.c,
        ..ObstructConfig::default()
    };
    let rows = run_obstruction(&cfg)?;
    let mut out = open_output(args.output.as_deref())?;
    write_obstruction_csv(&mut out, &cfg, &rows)?;
    finish(out)?;
    Ok(0)
}

fn cmd_bench(args: &BenchArgs) -> Result<u8, Failure> {
    let cfg = BenchConfig {
        k: args.k as usize,
        ns: args.n.clone(),
        instances: args.instances,
        seed: args.seed,
        walkers: args.walkers,
        ratio: args.ratio,
        coefficients: args.runtime.coefficients(),
        verify_limit: args.verify_limit,
    };
    let rows = run_bench(&cfg)?;
    let mut out = open_output(args.output.as_deref())?;
    write_bench_csv(&mut out, &cfg, &rows)?;
    finish(out)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("ssmc: --threads must be at least 1");
            return ExitCode::from(EXIT_CONFIG);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("ssmc: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Obstruct(a) => cmd_obstruct(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ssmc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
