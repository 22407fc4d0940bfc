//! `qentropy`: batch front end for inequality certification, reduction
//! instances, SWAP-test estimation and the q* scan.
//!
//! Exit status: 0 when every executed check passed, 1 when a check failed
//! (the report is still written), 2 on usage or input errors.

mod commands;
mod report;
mod states;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Environment variable fixing the worker thread count.
pub const THREADS_ENV: &str = "QENTROPY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "qentropy", version, about = "Certify entropy inequalities and build rank-2 reduction instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the inequality certification suite on an x grid.
    VerifyInequalities(VerifyArgs),
    /// Build a reduction instance file from a synthetic acceptance probability.
    Build(BuildArgs),
    /// Verify an instance file by exact simulation.
    Run(RunArgs),
    /// Sample SWAP tests between two states.
    SwapTest(SwapArgs),
    /// Locate the order minimizing the normalized Tsallis binary entropy.
    ScanQstar(ScanArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of equally spaced x points in [0, 1] (at least 101).
    #[arg(long, default_value_t = qentropy::inequality::DEFAULT_POINTS)]
    pub x_points: usize,
    /// Allowed negative margin, in (0, 1e-6].
    #[arg(long, default_value_t = qentropy::inequality::DEFAULT_SLACK)]
    pub slack: f64,
    /// Extra random orders per order interval.
    #[arg(long, default_value_t = 0)]
    pub random_orders: usize,
    /// Seed for random orders and random spectra.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Only run these claim ids (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// JSON report path; stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Flat CSV export of the check records.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// renyi or tsallis.
    #[arg(long, default_value = "renyi")]
    pub family: String,
    /// Positive order, or inf.
    #[arg(long)]
    pub order: String,
    /// Output qubits of the prepared state.
    #[arg(long)]
    pub n: u32,
    /// Acceptance probability of the synthetic circuit.
    #[arg(long)]
    pub accept_prob: f64,
    /// Instance file path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Instance file written by `build`.
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SwapArgs {
    /// zero:N, plus:N, maxmixed:N or circuit:PATH. Give one spec to test a
    /// state against a copy of itself (purity estimation).
    #[arg(long = "state", required = true, num_args = 1)]
    pub states: Vec<String>,
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Equally spaced x points in [0, 1]; 0, 1/2 and 1 are skipped.
    #[arg(long, default_value_t = 101)]
    pub x_points: usize,
    #[arg(long, default_value_t = 0.5)]
    pub q_lo: f64,
    #[arg(long, default_value_t = 6.0)]
    pub q_hi: f64,
    /// Coarse samples of q before refinement.
    #[arg(long, default_value_t = 221)]
    pub samples: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| anyhow::anyhow!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match cli.command {
        Command::VerifyInequalities(a) => commands::verify_inequalities(&a),
        Command::Build(a) => commands::build(&a),
        Command::Run(a) => commands::run(&a),
        Command::SwapTest(a) => commands::swap_test(&a),
        Command::ScanQstar(a) => commands::scan_qstar(&a),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
