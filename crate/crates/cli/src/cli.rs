use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epiclust::geo::MetricKind;

#[derive(Debug, Parser)]
#[command(name = "epiclust", version, about = "Spatial clustering of geocoded disease cases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic case dataset (CSV + GeoJSON)
    Synth(SynthArgs),
    /// Run one clustering algorithm and write labels, summary and plots
    Cluster(ClusterArgs),
    /// Run all four algorithms on the same cases and compare them
    Compare(CompareArgs),
    /// Sweep DBSCAN over an eps × min_pts grid
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Four tehsil anchors plus imported cases (95 records)
    District,
    /// Village-level anchors inside the four tehsils
    Villages,
    /// Two tight grids and one loose grid, for sensitivity checks
    TwoDensity,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Generator config (TOML); defaults to the built-in district recipe
    #[arg(long, env = "EPICLUST_CONFIG", conflicts_with = "preset")]
    pub config: Option<PathBuf>,

    /// Built-in dataset to write instead of a config
    #[arg(long, value_enum, env = "EPICLUST_PRESET")]
    pub preset: Option<Preset>,

    /// Override the config's seed
    #[arg(long, env = "EPICLUST_SEED")]
    pub seed: Option<u64>,

    /// Output directory
    #[arg(long, env = "EPICLUST_OUT")]
    pub out: PathBuf,
}

/// Where cases come from and how distances are measured.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Cases as .csv, .geojson/.json, or a generator config (.toml).
    /// Without it the built-in district dataset is used.
    #[arg(env = "EPICLUST_INPUT")]
    pub input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = MetricArg::Haversine, env = "EPICLUST_METRIC")]
    pub metric: MetricArg,

    /// Output directory
    #[arg(long, env = "EPICLUST_OUT")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Haversine,
    Equirect,
    Euclid,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Haversine => MetricKind::Haversine,
            MetricArg::Equirect => MetricKind::Equirect,
            MetricArg::Euclid => MetricKind::Euclid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Kmeans,
    Kmedoids,
    Dbscan,
    Optics,
}

impl AlgoArg {
    pub fn name(self) -> &'static str {
        match self {
            AlgoArg::Kmeans => "kmeans",
            AlgoArg::Kmedoids => "kmedoids",
            AlgoArg::Dbscan => "dbscan",
            AlgoArg::Optics => "optics",
        }
    }

    /// Whether this algorithm reads the parameter with clap id `id`.
    pub fn accepts(self, id: &str) -> bool {
        let allowed: &[&str] = match self {
            AlgoArg::Kmeans | AlgoArg::Kmedoids => &["k", "seed"],
            AlgoArg::Dbscan => &["eps_km", "min_pts"],
            AlgoArg::Optics => &["min_pts", "max_eps_km", "eps_cut_km"],
        };
        allowed.contains(&id)
    }
}

/// Clap ids of [`ParamArgs`] with the flag spelling used in messages.
pub const PARAM_FLAGS: [(&str, &str); 6] = [
    ("k", "--k"),
    ("eps_km", "--eps-km"),
    ("min_pts", "--min-pts"),
    ("max_eps_km", "--max-eps-km"),
    ("eps_cut_km", "--eps-cut-km"),
    ("seed", "--seed"),
];

/// Algorithm parameters. Distances are in km, except with `--metric euclid`
/// where they are in degrees.
#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Number of clusters (k-means, k-medoids)
    #[arg(long, env = "EPICLUST_K")]
    pub k: Option<usize>,

    /// Neighbourhood radius (DBSCAN)
    #[arg(long = "eps-km", env = "EPICLUST_EPS_KM")]
    pub eps_km: Option<f64>,

    /// Neighbourhood size including the point itself (DBSCAN, OPTICS)
    #[arg(long = "min-pts", env = "EPICLUST_MIN_PTS")]
    pub min_pts: Option<usize>,

    /// OPTICS search radius; unbounded when omitted
    #[arg(long = "max-eps-km", env = "EPICLUST_MAX_EPS_KM")]
    pub max_eps_km: Option<f64>,

    /// Radius at which clusters are cut from the OPTICS ordering
    #[arg(long = "eps-cut-km", env = "EPICLUST_EPS_CUT_KM")]
    pub eps_cut_km: Option<f64>,

    /// Seed for k-means++ initialisation
    #[arg(long, env = "EPICLUST_SEED")]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum, env = "EPICLUST_ALGO")]
    pub algo: AlgoArg,

    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// eps values as start:stop:step (inclusive)
    #[arg(long = "eps-grid", env = "EPICLUST_EPS_GRID")]
    pub eps_grid: String,

    /// min_pts values, comma separated or start:stop:step
    #[arg(long = "min-pts-grid", env = "EPICLUST_MIN_PTS_GRID")]
    pub min_pts_grid: Option<String>,

    /// Baseline eps the rows are scored against
    #[arg(long = "eps-km", env = "EPICLUST_EPS_KM")]
    pub eps_km: Option<f64>,

    /// Baseline min_pts
    #[arg(long = "min-pts", env = "EPICLUST_MIN_PTS")]
    pub min_pts: Option<usize>,
}
