//! Case records, their CSV and GeoJSON encodings, and the synthetic
//! outbreak generator.

mod csv_file;
mod fixtures;
mod geojson;
mod rng;
mod synth;

use std::path::Path;

use chrono::NaiveDate;
use crate::error::{Error, Result};
use crate::geo::GeoPoint;

pub use csv_file::{read_csv, read_csv_from, write_csv, write_csv_to, CSV_HEADER};
pub use fixtures::{two_density_dataset, TWO_DENSITY_BASELINE, TWO_DENSITY_ORIGIN};
pub use geojson::{read_geojson, read_geojson_labeled, read_geojson_str, to_geojson_string, write_geojson};
pub use rng::SplitStream;
pub use synth::{generate_synthetic, AnalysisDefaults, Anchor, SynthConfig};

/// One geocoded case.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseRecord {
    pub id: String,
    pub location: GeoPoint,
    /// Administrative unit, e.g. "Jhelum" or "Sara-e-Alamgir".
    pub tehsil: String,
    pub onset_date: Option<NaiveDate>,
    /// Infected outside the district ("carrier" cases).
    pub imported: bool,
}

impl CaseRecord {
    pub fn new(id: impl Into<String>, location: GeoPoint, tehsil: impl Into<String>) -> Self {
        CaseRecord {
            id: id.into(),
            location,
            tehsil: tehsil.into(),
            onset_date: None,
            imported: false,
        }
    }
}

pub fn locations(records: &[CaseRecord]) -> Vec<GeoPoint> {
    records.iter().map(|r| r.location).collect()
}

/// Reads a case file, choosing the format from the extension
/// (`.csv`, `.geojson` or `.json`).
pub fn read_cases(path: &Path) -> Result<Vec<CaseRecord>> {
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("csv") => read_csv(path),
        Some("geojson") | Some("json") => read_geojson(path),
        _ => Err(Error::InvalidInput(format!(
            "{}: unrecognised case file extension (expected .csv or .geojson)",
            path.display()
        ))),
    }
}

pub(crate) fn check_unique_ids(records: &[CaseRecord]) -> Result<()> {
    let mut seen = std::collections::HashSet::with_capacity(records.len());
    for r in records {
        if !seen.insert(r.id.as_str()) {
            return Err(Error::DuplicateId(r.id.clone()));
        }
    }
    Ok(())
}

pub(crate) fn parse_imported(raw: &str) -> Option<bool> {
    match raw.trim() {
        "true" | "1" => Some(true),
        "false" | "0" => Some(false),
        _ => None,
    }
}

pub(crate) fn parse_date(raw: &str) -> std::result::Result<Option<NaiveDate>, chrono::ParseError> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(None);
    }
    NaiveDate::parse_from_str(raw, "%Y-%m-%d").map(Some)
}
