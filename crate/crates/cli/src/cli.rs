//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::CommonArgs;

#[derive(Debug, Parser)]
#[command(name = "entrobound", version, about = "Entropy continuity bounds under energy constraints")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one bound and print its itemised report.
    Bound(BoundArgs),
    /// Tight, Winter and α-Winter bounds over an (ε, E) grid.
    Sweep(SweepArgs),
    /// Randomised dominance checks.
    Montecarlo(MonteCarloArgs),
    /// Extremal distributions against the tight bound; exit 3 on a gap above tolerance.
    Tightness(TightnessArgs),
    /// β·log Z brackets and counterexample entropies.
    Fa(FaArgs),
    /// Diagnostics and every applicable bound for two states read from files.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundName {
    Fano,
    Shannon,
    Vn,
    Winter3,
    Winter2,
    RenyiTsallisClassical,
    RenyiTsallisQuantum,
    TsallisLip,
    RenyiGt1,
    MomentF1,
    MomentFalpha,
}

/// Options for bounds that act on a pair of states.
#[derive(Debug, Clone, Default, Args)]
pub struct StateArgs {
    /// Matrix JSON `{d, entries_re, entries_im}` for ρ.
    #[arg(long)]
    pub rho: Option<PathBuf>,
    /// Matrix JSON for σ.
    #[arg(long)]
    pub sigma: Option<PathBuf>,
    /// Hamiltonian: number, shifted, power:k, shifted-power:k, diagonal:a,b,...
    #[arg(long, default_value = "shifted")]
    pub ham: String,
    /// Exponent r of the general moment estimate.
    #[arg(long)]
    pub r: Option<f64>,
    /// Hölder exponent q of the approximation estimate.
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// Moment ceiling μ of the approximation estimate [default: largest moment of the two states].
    #[arg(long)]
    pub mu: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    pub kind: BoundName,
    #[command(flatten)]
    pub states: StateArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Fano,
    Shannon,
    RenyiTsallisClassical,
    Quantum,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    pub experiment: Experiment,
    /// Summary JSON path [default: stdout when --out takes the rows, else stderr].
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct TightnessArgs {
    /// Print the ratio K(ε, 1/n, eⁿ)/(ε·n), n = 5..20, instead of the grid.
    #[arg(long)]
    pub asymptotic: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct FaArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub states: StateArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}
