//! `cyclic-gv`: construct auto-cyclic codes, pack them into cyclic codes with
//! a guaranteed minimum distance, and check the results.
//!
//! Reports go to stdout (JSON by default), diagnostics to stderr.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 usage or domain
//! error, 3 capacity exceeded, 4 violated input contract, 5 nothing found,
//! 6 I/O error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyclic_gv::autocyclic::{DEFAULT_ATTEMPTS_PER_ORBIT, DEFAULT_EXHAUSTIVE_LIMIT};
use cyclic_gv::DistanceThreshold;
use dashu_int::UBig;

use commands::Failure;
use report::Format;

#[derive(Parser)]
#[command(name = "cyclic-gv", version, about = "Non-linear binary cyclic codes at the Gilbert-Varshamov rate")]
struct Cli {
    /// Worker threads; results do not depend on this value.
    #[arg(long, global = true, env = "CYCLIC_GV_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the auto-cyclic code C' and write it as a code file.
    Construct(ConstructArgs),
    /// Greedily pack a code file into a cyclic code of minimum distance delta.
    Pack(PackArgs),
    /// Monte-Carlo estimate of Pr[d*_cyc(x, x) < delta] against the union bound.
    Estimate(EstimateArgs),
    /// Evaluate entropy, ball volumes, the tail bound, and GV rate.
    Bounds(BoundsArgs),
    /// Check closure, distance, maximality, and non-linearity of a code file.
    Verify(VerifyArgs),
    /// Find a pair of codewords showing the auto-cyclic code is not linear.
    Witness(WitnessArgs),
}

fn parse_delta(s: &str) -> Result<DistanceThreshold, String> {
    s.parse().map_err(|e: cyclic_gv::Error| e.to_string())
}

fn parse_ubig(s: &str) -> Result<UBig, String> {
    UBig::from_str_radix(s, 10).map_err(|e| format!("`{s}` is not a non-negative integer: {e}"))
}

#[derive(Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub n: usize,
    /// Threshold as p/q, below 1/2.
    #[arg(long, value_parser = parse_delta)]
    pub delta: DistanceThreshold,
    /// Orbits to collect when sampling.
    #[arg(long, default_value_t = 100)]
    pub orbits: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumerate all 2^n words up to this length, sample above it.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    pub exhaustive_limit: usize,
    /// Sampling budget, in draws per requested orbit.
    #[arg(long, default_value_t = DEFAULT_ATTEMPTS_PER_ORBIT)]
    pub attempts_per_orbit: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct PackArgs {
    /// Input code file (normally from `construct`).
    #[arg(long)]
    pub code: PathBuf,
    /// Defaults to the delta in the file header.
    #[arg(long, value_parser = parse_delta)]
    pub delta: Option<DistanceThreshold>,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the per-iteration trace as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_delta)]
    pub delta: DistanceThreshold,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Two-sided Hoeffding confidence is 1 - alpha.
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
}

#[derive(Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_delta)]
    pub delta: DistanceThreshold,
    /// Code size whose rate should be reported.
    #[arg(long, value_parser = parse_ubig)]
    pub size: Option<UBig>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Defaults to the delta in the file header.
    #[arg(long, value_parser = parse_delta)]
    pub delta: Option<DistanceThreshold>,
    /// The auto-cyclic code the packed code was built from; enables the maximality check.
    #[arg(long)]
    pub against: Option<PathBuf>,
    /// Also check that the code is not closed under XOR.
    #[arg(long)]
    pub linearity: bool,
    /// Orbit pairs to scan before falling back to a seeded sample.
    #[arg(long, default_value_t = 1 << 16)]
    pub pair_budget: u64,
    /// Word pairs to test for XOR closure before sampling.
    #[arg(long, default_value_t = 1 << 24)]
    pub xor_budget: u64,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_delta)]
    pub delta: DistanceThreshold,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draws allowed when sampling.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    /// Scan every word up to this length, sample above it.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    pub exhaustive_limit: usize,
}

fn run(command: Command) -> Result<commands::Outcome, Failure> {
    match command {
        Command::Construct(a) => commands::construct(a),
        Command::Pack(a) => commands::pack(a),
        Command::Estimate(a) => commands::estimate(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Verify(a) => commands::verify(a),
        Command::Witness(a) => commands::witness(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => {
                eprintln!("error: cannot start {t} worker threads: {e}");
                return ExitCode::from(commands::EXIT_USAGE);
            }
        },
        None => run(cli.command),
    };
    match result {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.report.render(format));
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(commands::EXIT_CHECK_FAILED)
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
