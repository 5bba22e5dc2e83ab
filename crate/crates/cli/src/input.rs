use std::path::Path;

use epiclust::geo::{DistanceMetric, GeoPoint, MetricKind};
use epiclust::ingestion::{generate_synthetic, locations, read_cases, AnalysisDefaults, CaseRecord, SynthConfig};

use crate::cli::InputArgs;
use crate::error::CliError;

pub struct Dataset {
    /// Human-readable origin, recorded in the manifest.
    pub source: String,
    pub cases: Vec<CaseRecord>,
    pub points: Vec<GeoPoint>,
    pub metric: DistanceMetric,
    /// Parameters shipped with a generator config, if any.
    pub analysis: Option<AnalysisDefaults>,
    pub seed: Option<u64>,
}

impl Dataset {
    pub fn load(args: &InputArgs) -> Result<Self, CliError> {
        let (source, cases, analysis, seed) = match &args.input {
            None => {
                let config = SynthConfig::district_default();
                let cases = generate_synthetic(&config)?;
                ("built-in district dataset".to_string(), cases, config.analysis, Some(config.seed))
            }
            Some(path) if is_toml(path) => {
                let config = SynthConfig::from_path(path)?;
                let cases = generate_synthetic(&config)?;
                (path.display().to_string(), cases, config.analysis, Some(config.seed))
            }
            Some(path) => {
                let cases = read_cases(path)?;
                (path.display().to_string(), cases, None, None)
            }
        };
        if cases.is_empty() {
            return Err(CliError::Data(format!("{source}: no cases")));
        }
        let points = locations(&cases);
        let metric = MetricKind::from(args.metric).resolve(&points)?;
        Ok(Dataset {
            source,
            cases,
            points,
            metric,
            analysis,
            seed,
        })
    }

    /// The recorded eps, only usable when the metric measures kilometres.
    pub fn default_eps(&self) -> Option<f64> {
        match self.metric {
            DistanceMetric::Euclidean => None,
            _ => self.analysis.map(|a| a.eps_km),
        }
    }

    pub fn default_min_pts(&self) -> usize {
        self.analysis.map_or(3, |a| a.min_pts)
    }

    pub fn default_k(&self) -> usize {
        self.analysis.map_or(3, |a| a.k)
    }
}

pub fn is_toml(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"))
}
