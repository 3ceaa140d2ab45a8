use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "resdist",
    version,
    about = "Exact resistance distances on digraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Laplacian, its Moore-Penrose inverse, resistances and distances.
    Compute(ComputeArgs),
    /// Check r(i,j) <= d(i,j) for every ordered pair; exit 1 on a violation.
    Verify(VerifyArgs),
    /// Blocks, cut vertices and the one-point-union certificate.
    Decompose(DecomposeArgs),
    /// Emit a generated graph.
    Gen(GenArgs),
    /// List built-in graphs, or emit one with --fixture.
    Fixtures(FixturesArgs),
    /// Check many generated graphs and summarize.
    Explore(ExploreArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatArg {
    Edges,
    Json,
}

impl From<FormatArg> for resdist::io::GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Edges => Self::Edges,
            FormatArg::Json => Self::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Graph file; format from --format, else from the extension.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Built-in graph name (see `fixtures`).
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Input file format.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output_format: OutputFormat,
    /// Decimal places in rendered values.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub precision: u32,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Omit decimal renderings.
    #[arg(long)]
    pub exact_only: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also run the identity suites.
    #[arg(long)]
    pub identities: bool,
    /// Also certify the block structure and check each block.
    #[arg(long)]
    pub theorem: bool,
    /// Include wall-clock timings (makes the report non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKindArg {
    Cycle,
    Digon,
    Cactus,
    BalancedRandom,
    ClassCUnion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceArg {
    Cycle,
    BalancedRandom,
}

/// Parameters shared by `gen` and `explore`.
#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Arc budget for balanced random graphs; defaults to 2n, clamped to n(n-1).
    #[arg(long)]
    pub arcs: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub blocks: usize,
    #[arg(long, default_value_t = 2)]
    pub min_len: usize,
    #[arg(long, default_value_t = 5)]
    pub max_len: usize,
    /// Piece shape for class-c unions.
    #[arg(long, value_enum, default_value_t = PieceArg::Cycle)]
    pub piece: PieceArg,
    #[arg(long, default_value_t = 3)]
    pub min_n: usize,
    #[arg(long, default_value_t = 5)]
    pub max_n: usize,
    #[arg(long, default_value_t = 150)]
    pub arc_factor_pct: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// Generator request as JSON, or `@PATH` to read it from a file.
    #[arg(long, value_name = "JSON", conflicts_with = "kind")]
    pub spec: Option<String>,
    #[arg(long, value_enum, required_unless_present = "spec")]
    pub kind: Option<GenKindArg>,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output graph format.
    #[arg(long, value_enum, default_value_t = FormatArg::Edges)]
    pub format: FormatArg,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FixturesArgs {
    /// Emit this fixture as a graph file instead of listing.
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
    /// Graph format used with --fixture.
    #[arg(long, value_enum, default_value_t = FormatArg::Edges)]
    pub format: FormatArg,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output_format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cactus,
    ClassC,
    Balanced,
    TwoOverlap,
}

#[derive(Debug, Clone, Args)]
pub struct ExploreArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Sample `t` uses seed `seed + t`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub timings: bool,
}
