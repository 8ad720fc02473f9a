use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact conversion between probabilistic tournament selection and
/// polynomial rank selection.
#[derive(Debug, Parser)]
#[command(name = "selalg", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a tournament to its rank polynomial, or a polynomial to a tournament.
    Convert(ConvertArgs),
    /// Print the rank probabilities induced by a scheme.
    Pmf(SchemeArgs),
    /// Check that a scheme induces a probability distribution.
    Validate(ValidateArgs),
    /// Dump the conversion matrices for one (n, t).
    Zoo(ZooArgs),
    /// Estimate the share of valid polynomials that are tournaments.
    Coverage(CoverageArgs),
    /// Reproduce the coverage table.
    Table1(Table1Args),
    /// Extreme points of the valid quadratic region.
    Vertices(VerticesArgs),
    /// Tournament corners T e_s in coefficient space.
    Corners(SizeArgs),
    /// Classify the shape of a quadratic rank scheme.
    Classify(ClassifyArgs),
    /// Draw winners from a scheme and compare with its exact distribution.
    Sample(SampleArgs),
    /// Emit CSV data for plotting.
    FigureData(FigureArgs),
}

/// A scheme given as a JSON file or inline.
#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Scheme JSON file.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n", "alpha", "a"])]
    pub scheme: Option<PathBuf>,
    /// Population size for an inline scheme.
    #[arg(long)]
    pub n: Option<usize>,
    /// Inline tournament weights, comma separated (e.g. "1/2,1/2").
    #[arg(long, value_name = "LIST", requires = "n", conflicts_with = "a", allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Inline polynomial coefficients a_1,a_2,... (e.g. "21/100,-1/50").
    #[arg(long, value_name = "LIST", requires = "n", allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Tournament size for polynomial input; defaults to the number of coefficients.
    #[arg(long)]
    pub t: Option<usize>,
    /// Convert back and require exact equality with the input.
    #[arg(long)]
    pub round_trip: bool,
    /// Also write the converted scheme JSON here.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Tournament size used for the representability check of a polynomial.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
}

#[derive(Debug, Args)]
pub struct ZooArgs {
    #[command(flatten)]
    pub size: SizeArgs,
    /// Only this matrix (e.g. T, Tbar, Vbar, R).
    #[arg(long, value_name = "NAME")]
    pub matrix: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Chart {
    /// Sample a_1..a_{t-1}, solve a_t.
    Top,
    /// Sample a_2..a_t, solve a_1.
    First,
    /// Sample probabilities at spread ranks.
    Nodes,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; SELALG_WORKERS overrides this.
    #[arg(long)]
    pub workers: Option<usize>,
}

pub const DEFAULT_SEED: u64 = 20_070_704;

#[derive(Debug, Args)]
pub struct CoverageArgs {
    #[command(flatten)]
    pub size: SizeArgs,
    /// Accepted samples; defaults to 1000000 for t <= 3 and 100000 above.
    #[arg(long)]
    pub accepted: Option<u64>,
    #[command(flatten)]
    pub mc: McArgs,
    /// Sampling coordinates; defaults to `top` for t <= 3 and `nodes` above.
    #[arg(long, value_enum)]
    pub chart: Option<Chart>,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Accepted samples per Monte-Carlo cell, overriding the per-t defaults.
    #[arg(long)]
    pub accepted: Option<u64>,
    /// Fill every cell with t <= n, not just the published ones.
    #[arg(long)]
    pub all: bool,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Debug, Args)]
pub struct VerticesArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: usize,
    /// Coefficients a_1,a_2,a_3. With --complete, give a_1,a_2 only.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub a: String,
    /// Solve a_3 from the normalisation constraint.
    #[arg(long)]
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Tv,
    Counts,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Report::Tv)]
    pub report: Report,
    /// Worker threads for tournament schemes; SELALG_WORKERS overrides this.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Scaled winner density n P(I = k) of deterministic tournaments.
    Tournament,
    /// Quadratic region, tournament triangle and monotone boundaries.
    Quad,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    pub figure: Figure,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
}
