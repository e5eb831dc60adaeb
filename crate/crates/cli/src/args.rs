use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qdetect",
    version,
    about = "Error probabilities and bounds for thermal-vs-identity channel discrimination"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number-state error vs N00N Chernoff and lower bounds, against M.
    Figure1(Figure1Args),
    /// Coherent vs SPDC Chernoff and lower bounds, against log-spaced M.
    Figure2(Figure2Args),
    /// Weak-noise coherent and SPDC values against the signal strength N_S.
    Figure3(Figure3Args),
    /// Check every closed form against the oracle and run the invariant suite.
    Validate(ValidateArgs),
    /// Closed-form and oracle values for one scenario, as a single CSV row.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    #[arg(long, default_value_t = 0.05)]
    pub beta: f64,
    /// Photon numbers, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [100u32, 20])]
    pub n: Vec<u32>,
    #[arg(long, default_value_t = 200)]
    pub m_max: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Figure2Args {
    /// Signal strengths, paired in order with `--n-b`.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5f64, 30.0])]
    pub n_s: Vec<f64>,
    /// Thermal noise levels, paired in order with `--n-s`.
    #[arg(long, value_delimiter = ',', default_values_t = [0.75f64, 2.0])]
    pub n_b: Vec<f64>,
    /// Largest log10 M.
    #[arg(long, default_value_t = 4.0)]
    pub log_m_max: f64,
    /// Number of log-uniform samples before deduplication.
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Figure3Args {
    #[arg(long, default_value_t = 0.05)]
    pub n_s_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub n_s_max: f64,
    #[arg(long, default_value_t = 60)]
    pub steps: usize,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Sweep configuration: `key=value` lines, keys mirroring the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Relative tolerance for every closed form (default 1e-8).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for the random operator pairs (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Truncation tail for coherent, SPDC and thermal states (default 1e-12).
    #[arg(long)]
    pub tail_eps: Option<f64>,
    /// Grid points for the Chernoff minimization (default 201).
    #[arg(long)]
    pub s_grid: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Number,
    Noon,
    Coherent,
    Spdc,
    Depolarizing,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, conflicts_with = "n_b")]
    pub beta: Option<f64>,
    /// Thermal noise level (default 1 when `--beta` is absent).
    #[arg(long)]
    pub n_b: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub n_s: f64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 0.5)]
    pub x: f64,
    /// Signal-mode cutoff for the oracle (default: from `--tail-eps`).
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, default_value_t = 1e-12)]
    pub tail_eps: f64,
    #[arg(long, default_value_t = 201)]
    pub s_grid: usize,
    #[command(flatten)]
    pub output: Output,
}
