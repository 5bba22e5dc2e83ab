use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::{CaseRecord, SplitStream};
use crate::error::{Error, Result};
use crate::geo::{Equirectangular, GeoPoint, PlanarPoint, DEFAULT_MAP_SCALE_KM_PER_CM};

const DISTRICT_DEFAULT: &str = include_str!("../../data/district-jhelum-2011.toml");
const VILLAGES_DEFAULT: &str = include_str!("../../data/jhelum-villages.toml");

/// A named centre around which cases are scattered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Anchor {
    pub name: String,
    pub lat: f64,
    pub lon: f64,
    pub cases: usize,
    /// Standard deviation of the isotropic Gaussian scatter, in km.
    pub spread_km: f64,
    /// Label written to the `tehsil` column; defaults to `name`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tehsil: Option<String>,
}

impl Anchor {
    pub fn location(&self) -> Result<GeoPoint> {
        GeoPoint::new(self.lat, self.lon).map_err(|e| Error::Config(format!("anchor `{}`: {e}", self.name)))
    }

    pub fn tehsil(&self) -> &str {
        self.tehsil.as_deref().unwrap_or(&self.name)
    }
}

/// Analysis parameters shipped alongside a dataset recipe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisDefaults {
    /// DBSCAN radius calibrated for this dataset, in km.
    pub eps_km: f64,
    pub min_pts: usize,
    pub k: usize,
    #[serde(default = "default_map_scale")]
    pub map_scale_km_per_cm: f64,
}

fn default_map_scale() -> f64 {
    DEFAULT_MAP_SCALE_KM_PER_CM
}

/// Seeded recipe for a synthetic outbreak.
///
/// `anchors` produce local cases; `outliers` produce cases flagged as
/// imported. Groups are generated in that order, group `j` drawing from
/// substream `j` of `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthConfig {
    pub seed: u64,
    /// Inclusive `[first, last]` onset-date window; dates are drawn
    /// uniformly by day. Without it records carry no onset date.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub onset_window: Option<[NaiveDate; 2]>,
    #[serde(default, rename = "anchor")]
    pub anchors: Vec<Anchor>,
    #[serde(default, rename = "outlier")]
    pub outliers: Vec<Anchor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisDefaults>,
}

impl SynthConfig {
    /// The district-level recipe: four tehsils plus imported cases from
    /// Sara-e-Alamgir, 95 cases in total.
    pub fn district_default() -> Self {
        Self::from_toml_str(DISTRICT_DEFAULT).expect("bundled district config is valid")
    }

    /// Fine-grained recipe with one anchor per affected village. Village
    /// coordinates and counts are illustrative estimates.
    pub fn villages_default() -> Self {
        Self::from_toml_str(VILLAGES_DEFAULT).expect("bundled village config is valid")
    }

    pub fn district_default_toml() -> &'static str {
        DISTRICT_DEFAULT
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: SynthConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.anchors.is_empty() && self.outliers.is_empty() {
            return Err(Error::Config("no anchors or outliers".into()));
        }
        for a in self.anchors.iter().chain(&self.outliers) {
            a.location()?;
            if a.cases == 0 {
                return Err(Error::Config(format!("anchor `{}`: case count must be positive", a.name)));
            }
            if !(a.spread_km.is_finite() && a.spread_km > 0.0) {
                return Err(Error::Config(format!(
                    "anchor `{}`: spread_km must be positive, got {}",
                    a.name, a.spread_km
                )));
            }
            if a.lat.abs() >= 90.0 {
                return Err(Error::Config(format!("anchor `{}` sits on a pole", a.name)));
            }
        }
        if let Some([first, last]) = self.onset_window {
            if last < first {
                return Err(Error::Config(format!("onset_window ends ({last}) before it starts ({first})")));
            }
        }
        if let Some(a) = &self.analysis {
            if !(a.eps_km.is_finite() && a.eps_km > 0.0) || a.min_pts == 0 || a.k == 0 {
                return Err(Error::Config("analysis: eps_km, min_pts and k must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn total_cases(&self) -> usize {
        self.anchors.iter().chain(&self.outliers).map(|a| a.cases).sum()
    }
}

/// Generates the records described by `config`.
///
/// Each case is offset from its anchor by `spread_km · (z1, z2)` on the
/// equirectangular plane tangent at the anchor, where `(z1, z2)` is one
/// Box–Muller pair. When an onset window is set, one further uniform draw
/// picks the day. Ids run `case-0001`, `case-0002`, … across all groups.
pub fn generate_synthetic(config: &SynthConfig) -> Result<Vec<CaseRecord>> {
    config.validate()?;
    let width = config.total_cases().to_string().len().max(4);
    let window = config.onset_window.map(|[first, last]| (first, (last - first).num_days() as u64 + 1));

    let groups = config
        .anchors
        .iter()
        .map(|a| (a, false))
        .chain(config.outliers.iter().map(|a| (a, true)));
    let mut base = SplitStream::new(config.seed);
    let mut records = Vec::with_capacity(config.total_cases());
    for (anchor, imported) in groups {
        let mut stream = base.clone();
        base.jump();
        let projection = Equirectangular::new(anchor.location()?)?;
        for _ in 0..anchor.cases {
            let (z1, z2) = stream.normal_pair();
            let offset = PlanarPoint::new(anchor.spread_km * z1, anchor.spread_km * z2);
            let location = projection
                .unproject(offset)
                .map_err(|e| Error::Config(format!("anchor `{}`: {e}", anchor.name)))?;
            let onset_date = window.map(|(first, days)| {
                let day = ((stream.uniform() * days as f64) as u64).min(days - 1);
                first + chrono::Days::new(day)
            });
            records.push(CaseRecord {
                id: format!("case-{:0width$}", records.len() + 1),
                location,
                tehsil: anchor.tehsil().to_string(),
                onset_date,
                imported,
            });
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geo::haversine_distance;

    #[test]
    fn district_default_counts() {
        let config = SynthConfig::district_default();
        assert_eq!(config.total_cases(), 95);
        let count = |name: &str| config.anchors.iter().chain(&config.outliers).find(|a| a.name == name).unwrap().cases;
        assert_eq!(count("Jhelum"), 46);
        assert_eq!(count("Dina"), 22);
        assert_eq!(count("Sohawa"), 12);
        assert_eq!(count("Pind Dadan Khan"), 10);
        assert_eq!(count("Sara-e-Alamgir"), 5);
        assert!(config.outliers.iter().all(|a| a.name == "Sara-e-Alamgir"));
    }

    #[test]
    fn district_anchor_coordinates() {
        let config = SynthConfig::district_default();
        let at = |name: &str| {
            let a = config.anchors.iter().find(|a| a.name == name).unwrap();
            (a.lat, a.lon)
        };
        assert_eq!(at("Jhelum"), (32.9286, 73.7314));
        assert_eq!(at("Dina"), (33.0283, 73.6011));
        assert_eq!(at("Sohawa"), (32.825, 73.7653));
        assert_eq!(at("Pind Dadan Khan"), (32.5833, 73.05));
    }

    #[test]
    fn deterministic_and_sequential_ids() {
        let config = SynthConfig::district_default();
        let a = generate_synthetic(&config).unwrap();
        let b = generate_synthetic(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 95);
        assert_eq!(a[0].id, "case-0001");
        assert_eq!(a[94].id, "case-0095");
        assert_eq!(a.iter().filter(|r| r.imported).count(), 5);
        assert!(a.iter().filter(|r| r.imported).all(|r| r.tehsil == "Sara-e-Alamgir"));
    }

    #[test]
    fn different_seed_changes_positions() {
        let mut config = SynthConfig::district_default();
        let a = generate_synthetic(&config).unwrap();
        config.seed += 1;
        let b = generate_synthetic(&config).unwrap();
        assert_ne!(a[0].location, b[0].location);
    }

    #[test]
    fn degenerate_spread_collapses_onto_anchor() {
        let mut config = SynthConfig::district_default();
        for a in config.anchors.iter_mut().chain(config.outliers.iter_mut()) {
            a.spread_km = 1e-9;
        }
        let records = generate_synthetic(&config).unwrap();
        for r in &records {
            let anchor = config.anchors.iter().chain(&config.outliers).find(|a| a.tehsil() == r.tehsil).unwrap();
            assert!(haversine_distance(r.location, anchor.location().unwrap()) < 1e-3);
        }
    }

    #[test]
    fn onset_dates_within_window() {
        let config = SynthConfig::district_default();
        let [first, last] = config.onset_window.unwrap();
        for r in generate_synthetic(&config).unwrap() {
            let d = r.onset_date.unwrap();
            assert!(first <= d && d <= last);
        }
    }

    #[test]
    fn invalid_configs() {
        let bad_count = "seed = 1\n[[anchor]]\nname='a'\nlat=1.0\nlon=1.0\ncases=0\nspread_km=1.0\n";
        assert!(matches!(SynthConfig::from_toml_str(bad_count), Err(Error::Config(_))));
        let bad_sigma = "seed = 1\n[[anchor]]\nname='a'\nlat=1.0\nlon=1.0\ncases=3\nspread_km=0.0\n";
        assert!(SynthConfig::from_toml_str(bad_sigma).is_err());
        let bad_lat = "seed = 1\n[[anchor]]\nname='a'\nlat=95.0\nlon=1.0\ncases=3\nspread_km=1.0\n";
        assert!(SynthConfig::from_toml_str(bad_lat).is_err());
        assert!(SynthConfig::from_toml_str("seed = 1\n").is_err());
        assert!(SynthConfig::from_toml_str("seed = 'x'\n").is_err());
        assert!(SynthConfig::from_toml_str("seed = 1\nbogus = 2\n[[anchor]]\nname='a'\nlat=1.0\nlon=1.0\ncases=3\nspread_km=1.0\n").is_err());
    }

    #[test]
    fn toml_round_trip() {
        let config = SynthConfig::district_default();
        let text = config.to_toml_string().unwrap();
        assert_eq!(SynthConfig::from_toml_str(&text).unwrap(), config);
    }

    #[test]
    fn villages_config_loads() {
        let config = SynthConfig::villages_default();
        assert!(config.anchors.len() >= 10);
        assert!(generate_synthetic(&config).is_ok());
    }
}
