use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "shiftdtw", version, about = "Cyclic time-series distances and shift-aware K-Means")]
pub struct Cli {
    /// Worker threads (0 = one per core). Output does not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two series.
    Dist(DistArgs),
    /// K-Means clustering of a dataset.
    Cluster(ClusterArgs),
    /// Visited-cell and timing benchmark over a grid of lengths and radii.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Euclidean,
    Dtw,
    #[value(name = "dtw_banded")]
    DtwBanded,
    #[value(name = "shiftdtw")]
    ShiftDtw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureArg,

    /// Sakoe-Chiba radius, required by dtw_banded and shiftdtw.
    #[arg(short = 'r', long = "radius")]
    pub radius: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Skip the first row of CSV inputs.
    #[arg(long)]
    pub header: bool,

    /// Treat the first CSV column as the series identifier.
    #[arg(long)]
    pub id_column: bool,

    /// Z-normalize every series after loading.
    #[arg(long)]
    pub znorm: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,

    #[command(flatten)]
    pub input: InputArgs,

    #[command(flatten)]
    pub output: OutputArgs,

    /// Include every tested offset and its distance (shiftdtw only).
    #[arg(long)]
    pub per_offset: bool,

    /// First series: a CSV/TSV file (first row is used) or inline values such as `1,2,3`.
    pub a: String,

    /// Second series, same forms as the first.
    pub b: String,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,

    #[command(flatten)]
    pub input: InputArgs,

    #[command(flatten)]
    pub output: OutputArgs,

    #[arg(long)]
    pub k: usize,

    #[arg(long, default_value_t = 10)]
    pub n_init: usize,

    #[arg(long, default_value_t = 50)]
    pub max_iter: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Report accuracy against the dataset's labels (UCR `.tsv` input).
    #[arg(long)]
    pub labels: bool,

    /// Dataset: UCR `.tsv` (label first) or CSV rows.
    pub dataset: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
    pub lengths: Vec<usize>,

    #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
    pub radii: Vec<usize>,

    /// Repetitions per grid point; the median time is reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Report 0 for wall times, making the output reproducible byte for byte.
    #[arg(long)]
    pub no_timing: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}
