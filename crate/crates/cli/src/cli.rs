use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "srr", version, about = "Substring range reporting indexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an index from a text file and write it to disk.
    Build(BuildArgs),
    /// Query an index file.
    Query(QueryArgs),
    /// Check indexed answers against brute force on random workloads.
    Verify(VerifyArgs),
    /// Time queries per pattern length and show which path served them.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
#[command(group(
    ArgGroup::new("source")
        .required(true)
        .args(["labels", "positional", "intervals", "gap"])
))]
pub struct BuildArgs {
    /// Text file, read as raw bytes.
    #[arg(long)]
    pub text: PathBuf,
    /// Whitespace-separated decimal labels, one per text byte.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Label bound u for --labels (defaults to the largest label).
    #[arg(long, requires = "labels")]
    pub bound: Option<u64>,
    /// Label every position with itself (position-restricted search).
    #[arg(long)]
    pub positional: bool,
    /// File of "s f" interval pairs, one per line.
    #[arg(long)]
    pub intervals: Option<PathBuf>,
    /// Build a gapped-pattern index for this gap length.
    #[arg(long)]
    pub gap: Option<usize>,
    /// Override the top-tree string-depth cutoff.
    #[arg(long, conflicts_with = "counting")]
    pub tau: Option<usize>,
    /// Use the deeper cutoff tuned for counting queries.
    #[arg(long)]
    pub counting: bool,
    /// Output index file (defaults to the text path with ".srr" appended).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    #[command(subcommand)]
    pub kind: QueryKind,
}

#[derive(Subcommand, Debug)]
pub enum QueryKind {
    /// Occurrences whose labels lie in the range.
    Report(RangeQuery),
    /// Number of occurrences whose labels lie in the range.
    Count(RangeQuery),
    /// Whether no occurrence has a label in the range.
    Empty(RangeQuery),
    /// Occurrences starting in a position range (prss index).
    Prss(RangeQuery),
    /// Occurrences in a position range and in the interval set (interval index).
    Interval(RangeQuery),
    /// Occurrences of P1, the index's gap, then P2 (gap index).
    Gap(GapQuery),
}

#[derive(Args, Debug)]
pub struct RangeQuery {
    #[arg(long)]
    pub index: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub pattern: OsString,
    /// Inclusive range a:b.
    #[arg(long)]
    pub range: String,
    /// Read patterns as hex strings.
    #[arg(long)]
    pub hex: bool,
}

#[derive(Args, Debug)]
pub struct GapQuery {
    #[arg(long)]
    pub index: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub p1: OsString,
    #[arg(long, allow_hyphen_values = true)]
    pub p2: OsString,
    #[arg(long)]
    pub hex: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Srr,
    Prss,
    Interval,
    Gap,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "srr")]
    pub mode: Mode,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum random text length.
    #[arg(long, default_value_t = 512)]
    pub max_len: usize,
    /// Bytes random texts and patterns are drawn from.
    #[arg(long, default_value = "abcd")]
    pub alphabet: String,
    /// Label bound u for srr mode.
    #[arg(long, default_value_t = 1024)]
    pub label_bound: u64,
    /// Use this text for every trial instead of random texts.
    #[arg(long)]
    pub text: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["index", "gen_len"])))]
pub struct BenchArgs {
    #[arg(long)]
    pub index: Option<PathBuf>,
    /// Benchmark a positional index over a random text of this length.
    #[arg(long)]
    pub gen_len: Option<usize>,
    #[arg(long, default_value = "abcd")]
    pub alphabet: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated pattern lengths.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32")]
    pub lengths: Vec<usize>,
    /// Queries per bucket.
    #[arg(long, default_value_t = 200)]
    pub queries: usize,
}
