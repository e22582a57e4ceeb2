use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rwalk", version, about = "SO(2)-coined quantum walk: distributions, simulation and coin-angle estimation")]
pub struct Cli {
    /// Seed for every random choice; a fresh one is drawn and reported when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form displacement distribution.
    Pmf(PmfArgs),
    /// Displacement distribution by direct state-vector simulation.
    Simulate(PmfArgs),
    /// Log-likelihood of a dataset over a grid of coin angles.
    Likelihood(LikelihoodArgs),
    /// Maximum-likelihood estimate of the coin angle.
    Estimate(EstimateArgs),
    /// All lambda with a given return probability.
    LevelSet(LevelSetArgs),
    /// Spread of the quantum and classical walks against step count.
    Diffusion(DiffusionArgs),
    /// Estimation error for several splits of a fixed step budget.
    Databox(DataBoxArgs),
    /// Data behind the distribution figures.
    Figures(FiguresArgs),
    /// Check the closed form against direct simulation.
    Validate(ValidateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file; defaults to standard output, or to a file in $RWALK_OUT_DIR when that is set.
    #[arg(long, short)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
#[group(id = "coin", required = true, multiple = false)]
pub struct CoinArgs {
    /// lambda = cos(theta), in [-1, 1].
    #[arg(long, group = "coin", allow_hyphen_values = true)]
    pub lambda: Option<f64>,

    /// Coin angle in radians.
    #[arg(long, group = "coin", allow_hyphen_values = true)]
    pub theta: Option<f64>,
}

#[derive(Args, Debug)]
pub struct PmfArgs {
    /// Number of steps.
    #[arg(long)]
    pub k: usize,

    #[command(flatten)]
    pub coin: CoinArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Independent position measurements.
    Positions,
    /// n walks that all return to the site they started from.
    Loop,
    /// Return / no-return counts.
    Bernoulli,
}

#[derive(Args, Debug)]
pub struct DataArgs {
    /// Dataset file (CSV or JSON); conflicts with the generation flags.
    #[arg(long, conflicts_with_all = ["theta_true", "n0"])]
    pub data: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Method::Positions)]
    pub method: Method,

    /// True coin angle used to generate data.
    #[arg(long, allow_hyphen_values = true)]
    pub theta_true: Option<f64>,

    /// Number of steps per walk.
    #[arg(long)]
    pub k: Option<usize>,

    /// Number of walks.
    #[arg(long)]
    pub n: Option<u64>,

    /// Observed returns (bernoulli method), instead of generating them.
    #[arg(long)]
    pub n0: Option<u64>,

    /// Site of the loop method.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub x: i64,
}

#[derive(Args, Debug)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta_min: f64,

    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_hyphen_values = true)]
    pub theta_max: f64,

    /// Search theta over [-pi, pi] instead.
    #[arg(long, conflicts_with_all = ["theta_min", "theta_max"])]
    pub full_range: bool,

    #[arg(long, default_value_t = 401)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct LikelihoodArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[command(flatten)]
    pub range: RangeArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[command(flatten)]
    pub range: RangeArgs,

    /// Width of the final golden-section bracket.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Where to write the generated dataset, if any.
    #[arg(long)]
    pub save_data: Option<PathBuf>,

    /// Result file (JSON); standard output by default.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LevelSetArgs {
    /// Observed return frequency n0/n.
    #[arg(long)]
    pub f: f64,

    #[arg(long)]
    pub k: usize,

    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub lambda_min: f64,

    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub lambda_max: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DiffusionArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = std::f64::consts::FRAC_PI_3)]
    pub theta: f64,

    /// Increasing step counts.
    #[arg(long, value_delimiter = ',', default_values_t = [16usize, 32, 64, 128, 256])]
    pub ks: Vec<usize>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DataBoxArgs {
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub theta_true: f64,

    /// Total number of walk steps available.
    #[arg(long, default_value_t = 4000)]
    pub budget: u64,

    /// Allocations as KxN, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = ["2x2000".to_string(), "20x200".to_string()])]
    pub alloc: Vec<String>,

    #[arg(long, default_value_t = 8)]
    pub replications: usize,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Fig1,
    Fig2a,
    Fig2b,
    All,
}

#[derive(Args, Debug)]
pub struct FiguresArgs {
    #[arg(long, value_enum, default_value_t = Which::All)]
    pub which: Which,

    /// Directory for the figure files.
    #[arg(long, env = "RWALK_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 30)]
    pub max_k: usize,

    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}
