use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ncgkit", version, about = "Noncommutative tori, theta rings and spherical manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Theta constant with rational characteristic.
    Theta(ThetaArgs),
    /// Structure constants and quadratic presentation of B_g(θ, τ).
    Ring(RingArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Sample the characteristic variety of the Λ(φ) relations.
    Charvar(CharvarArgs),
}

#[derive(Debug, Args)]
pub struct PrecisionArgs {
    /// Working precision in bits.
    #[arg(long, env = "NCGKIT_BITS", default_value_t = 128)]
    pub bits: u32,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// Characteristic r, a rational such as 1/3.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub r: String,
    /// Scale l > 0 of the argument, rational.
    #[arg(long, default_value = "1")]
    pub l: String,
    /// τ as "re,im"; the series is in q = e^{−πiτ}.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: String,
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// g as "a,b,c,d".
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    /// θ as "(p + s*sqrt(D))/q".
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: String,
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Relative singular-value tolerance for the relation rank.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for structure_constants.csv and presentation.json.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only claims whose id starts with this prefix.
    #[arg(long)]
    pub only: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Corrupt part of the implementation: torus_phase, s4_half, lambda_symmetry.
    #[arg(long, hide = true)]
    pub inject: Vec<String>,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SampleMode {
    /// Random points of ℂ⁴.
    Random,
    /// Newton search for points on the variety.
    Search,
}

#[derive(Debug, Args)]
pub struct CharvarArgs {
    /// φ as three rationals in [0, 1), e.g. "1/7,2/5,3/11".
    #[arg(long, default_value = "0,0,0")]
    pub phi: String,
    /// Number of random points, or of Newton starts in search mode.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "random")]
    pub mode: SampleMode,
    /// CSV output path; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
