use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "pdrqa", version, about = "Recurrence quantification of the period-doubling sequence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; `generate` prints a bare 0/1 line when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads for diagonal scans (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Diagonal,
    Vertical,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of the sequence.
    Generate(GenerateArgs),
    /// Histogram of line lengths in the recurrence plot.
    Lines(LinesArgs),
    /// Recurrence quantifiers of one finite plot next to their limits.
    Rqa(RqaArgs),
    /// Closed-form asymptotic quantifiers per line length.
    Oracle(OracleArgs),
    /// Finite-size quantifiers over a schedule of plot sizes.
    Converge(ConvergeArgs),
    /// Check the structural properties of the plot and report counterexamples.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Embedding {
    /// Embedding dimension.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,

    /// Distance threshold; raises the effective embedding dimension.
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Number of letters.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,

    /// Also run the valuation and Toeplitz generators and compare.
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Debug, Args)]
pub struct LinesArgs {
    /// Plot size.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[command(flatten)]
    pub embedding: Embedding,
    #[arg(long, value_enum, default_value_t = Kind::Diagonal)]
    pub kind: Kind,
}

#[derive(Debug, Args)]
pub struct RqaArgs {
    /// Plot size.
    #[arg(long, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[command(flatten)]
    pub embedding: Embedding,
    /// Minimal line length.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub lmin: u64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub embedding: Embedding,
    /// First line length.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub lmin: u64,
    /// Last line length.
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..=1 << 40))]
    pub lmax: u64,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// Comma-separated, strictly increasing plot sizes.
    #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048,4096,8192")]
    pub schedule: Vec<u64>,
    #[command(flatten)]
    pub embedding: Embedding,
    /// Minimal line length.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub lmin: u64,
    /// Comma-separated line lengths whose densities are tabulated.
    #[arg(long, value_delimiter = ',', default_value = "1", value_parser = clap::value_parser!(u64).range(1..))]
    pub lengths: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Side of the grid of start points checked against the arithmetic sets.
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(2..=1 << 14))]
    pub bound: u64,
    /// Plot size for the length, vertical and embedding suites.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    /// Restrict the vertical and embedding suites to one dimension.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub m: Option<u64>,
    /// Flip this letter (1-based) of the generated word before checking.
    #[arg(long, hide = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub corrupt_at: Option<u64>,
}
