use super::{adjusted_rand_index, fmt_opt};
use crate::clustering::{dbscan, DbscanParams};
use crate::error::{Error, Result};
use crate::geo::SpatialIndex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepMetrics {
    pub num_clusters: usize,
    pub noise_fraction: f64,
    pub ari_vs_baseline: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub eps: f64,
    pub min_pts: usize,
    /// Invalid grid entries record their error and the sweep moves on.
    pub outcome: std::result::Result<SweepMetrics, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub baseline: DbscanParams,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// CSV with header
    /// `eps_km,min_pts,status,num_clusters,noise_fraction,ari_vs_baseline`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["eps_km", "min_pts", "status", "num_clusters", "noise_fraction", "ari_vs_baseline"])?;
        for row in &self.rows {
            let (status, clusters, noise, ari) = match &row.outcome {
                Ok(m) => (
                    "ok".to_string(),
                    m.num_clusters.to_string(),
                    m.noise_fraction.to_string(),
                    m.ari_vs_baseline.to_string(),
                ),
                Err(e) => (format!("error: {e}"), String::new(), String::new(), fmt_opt(None)),
            };
            w.write_record([row.eps.to_string(), row.min_pts.to_string(), status, clusters, noise, ari])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Runs DBSCAN at every `(eps, min_pts)` in the grid (eps-major order) and
/// scores each labelling against the one at `base`.
///
/// Repeated grid values are dropped, keeping the first occurrence.
pub fn sensitivity_sweep(
    index: &SpatialIndex,
    base: DbscanParams,
    eps_grid: &[f64],
    min_pts_grid: &[usize],
) -> Result<SweepResult> {
    if eps_grid.is_empty() || min_pts_grid.is_empty() {
        return Err(Error::InvalidParameter("sweep grid is empty".into()));
    }
    let baseline = dbscan(index, &base)?;
    let mut eps_values: Vec<f64> = Vec::new();
    for &e in eps_grid {
        if !eps_values.iter().any(|v| v.to_bits() == e.to_bits()) {
            eps_values.push(e);
        }
    }
    let mut min_pts_values: Vec<usize> = Vec::new();
    for &m in min_pts_grid {
        if !min_pts_values.contains(&m) {
            min_pts_values.push(m);
        }
    }

    let mut rows = Vec::with_capacity(eps_values.len() * min_pts_values.len());
    for &eps in &eps_values {
        for &min_pts in &min_pts_values {
            let outcome = dbscan(index, &DbscanParams::new(eps, min_pts))
                .and_then(|a| {
                    Ok(SweepMetrics {
                        num_clusters: a.num_clusters,
                        noise_fraction: a.noise_fraction(),
                        ari_vs_baseline: adjusted_rand_index(&baseline.labels, &a.labels)?,
                    })
                })
                .map_err(|e| e.to_string());
            rows.push(SweepRow { eps, min_pts, outcome });
        }
    }
    Ok(SweepResult { baseline: base, rows })
}

/// Inclusive arithmetic grid `start, start + step, …` up to `stop`, with a
/// small tolerance so that `0.5:2.0:0.5` ends at 2.0. Values are rounded
/// to ten decimal places.
pub fn float_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(Error::InvalidParameter(format!(
            "bad grid {start}:{stop}:{step} (need finite start <= stop and step > 0)"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::InvalidParameter(format!("grid {start}:{stop}:{step} has {count} points")));
    }
    // Round away the accumulated representation error so that 0.8:1.2:0.1
    // yields 1.2 rather than 1.2000000000000002.
    Ok((0..count)
        .map(|i| ((start + i as f64 * step) * 1e10).round() / 1e10)
        .collect())
}
