//! Validity indices and cross-algorithm comparison.

mod ari;
mod breakdown;
mod calibrate;
mod compare;
mod silhouette;
mod sweep;

pub use ari::{adjusted_rand_index, adjusted_rand_index_with, NoiseHandling};
pub use breakdown::{tehsil_breakdown, TehsilBreakdown, TehsilCount};
pub use calibrate::{calibrate_eps, CalibrationCriteria};
pub use compare::{
    compare_algorithms, Algorithm, AlgorithmRun, AlgorithmSummary, ComparisonParams, ComparisonReport,
    TehsilContingency,
};
pub use silhouette::silhouette;
pub use sweep::{float_grid, sensitivity_sweep, SweepMetrics, SweepResult, SweepRow};

/// Formats an optional float for CSV output; `None` becomes `undefined`.
pub(crate) fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| x.to_string())
}
