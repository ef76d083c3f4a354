use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cpvquad::bench::{self, BenchmarkReport};
use cpvquad::expr::parse_integrand;
use cpvquad::observation::{self, RuleIndexing, SweepConfig};
use cpvquad::{CpvError, CpvProblem, CpvResult, EPS};
use serde_json::json;

/// Cauchy principal value integrals PV ∫_a^b f(x)/(x − τ) dx.
#[derive(Parser)]
#[command(name = "cpvquad", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one principal value integral.
    Integrate(IntegrateArgs),
    /// Run the built-in benchmark battery against its reference values.
    Bench(BenchArgs),
    /// Sweep composite Gauss rules on 1/x over random partitions of [0, 1].
    Observation(ObservationArgs),
}

#[derive(clap::Args)]
struct IntegrateArgs {
    /// Integrand in x, e.g. "exp(x)" or "sin(550*x)".
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    /// Location of the singularity, a < tau < b.
    #[arg(long, allow_hyphen_values = true)]
    tau: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = cpvquad::cpv::DEFAULT_TOLERANCE)]
    tol: f64,
    /// Registered method: open, cutoff, longman or subtract.
    #[arg(long, default_value = cpvquad::cpv::DEFAULT_METHOD)]
    method: String,
    /// Lower limit of the symmetric-difference integral for `cutoff`.
    #[arg(long, default_value_t = EPS)]
    mu: f64,
    /// Print a JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value = cpvquad::cpv::DEFAULT_METHOD)]
    method: String,
    /// Write the rows as CSV to this path.
    #[arg(long, conflicts_with = "json")]
    csv: Option<PathBuf>,
    /// Write the rows as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run the cases in parallel; the numbers are identical, only timing differs.
    #[arg(long)]
    concurrent: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Indexing {
    /// m is the summation upper index; rules have m + 1 points.
    Upper,
    /// m is the number of points.
    Points,
}

#[derive(clap::Args)]
struct ObservationArgs {
    #[arg(long, default_value_t = 2)]
    m_min: usize,
    #[arg(long, default_value_t = 30)]
    m_max: usize,
    #[arg(long, default_value_t = 50)]
    n_max: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Indexing::Upper)]
    indexing: Indexing,
    /// Write one row per (m, n) cell to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Exit status: 0 success, 1 computation did not meet its target, 2 bad input.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<CpvError> for Failure {
    fn from(e: CpvError) -> Self {
        match e {
            CpvError::InvalidArgument(_) | CpvError::UnknownMethod { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn integrate(args: IntegrateArgs) -> Result<bool, Failure> {
    let f = parse_integrand(&args.f).map_err(|e| Failure::Usage(format!("--f: {e}")))?;
    let result: CpvResult = CpvProblem::new(f, args.tau)
        .on_interval(args.a, args.b)
        .with_tol(args.tol)
        .with_method(args.method)
        .with_mu(args.mu)
        .solve()?;
    if args.json {
        let out = json!({
            "value": result.value,
            "estimate": result.error_estimate,
            "budget": result.budget,
            "evaluations": result.evaluations,
            "converged": result.converged,
            "method": result.method,
        });
        println!("{out}");
    } else {
        println!("value       {:?}", result.value);
        println!("estimate    {:e}", result.error_estimate);
        println!("evaluations {}", result.evaluations);
        if !result.converged {
            println!("warning: interval limit reached before the tolerance was met");
        }
    }
    Ok(result.converged)
}

fn print_report(report: &BenchmarkReport) {
    println!(
        "{:<4} {:>10} {:>24} {:>10} {:>10} {:>8} {:>10}",
        "case", "tau", "value", "abs_err", "estimate", "evals", "seconds"
    );
    for r in &report.rows {
        println!(
            "{:<4} {:>10} {:>24?} {:>10.2e} {:>10.2e} {:>8} {:>10.6}",
            r.name, r.tau, r.value, r.abs_error, r.error_estimate, r.evaluations, r.elapsed_seconds
        );
    }
    for v in &report.violations {
        eprintln!("violation: {v}");
    }
}

fn run_bench(args: BenchArgs) -> Result<bool, Failure> {
    let report = bench::run_benchmark(args.tol, &args.method, args.concurrent)?;
    print_report(&report);
    if let Some(path) = &args.csv {
        bench::write_csv(&report.rows, BufWriter::new(File::create(path)?))
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    if let Some(path) = &args.json {
        let mut out = BufWriter::new(File::create(path)?);
        bench::write_json(&report.rows, &mut out).map_err(|e| Failure::Runtime(e.to_string()))?;
        writeln!(out)?;
    }
    Ok(report.passed())
}

fn run_observation(args: ObservationArgs) -> Result<bool, Failure> {
    let config = SweepConfig {
        m_min: args.m_min,
        m_max: args.m_max,
        n_min: 1,
        n_max: args.n_max,
        trials: args.trials,
        seed: args.seed,
        indexing: match args.indexing {
            Indexing::Upper => RuleIndexing::UpperIndex,
            Indexing::Points => RuleIndexing::Points,
        },
    };
    let report = observation::sweep(&config)?;
    println!(
        "{:>4} {:>6} {:>12} {:>6} {:>20}",
        "m", "points", "max_ratio", "at_n", "witness_seed"
    );
    for m in args.m_min..=args.m_max {
        if let Some(c) = report.max_ratio_where(|c| c.m == m) {
            println!(
                "{:>4} {:>6} {:>12.6} {:>6} {:>20}",
                c.m, c.points, c.max_ratio, c.n, c.witness_seed
            );
        }
    }
    if let Some(path) = &args.csv {
        report
            .write_csv(BufWriter::new(File::create(path)?))
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Integrate(args) => integrate(args),
        Command::Bench(args) => run_bench(args),
        Command::Observation(args) => run_observation(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
