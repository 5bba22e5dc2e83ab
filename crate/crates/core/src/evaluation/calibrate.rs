use crate::clustering::{dbscan, DbscanParams};
use crate::error::Result;
use crate::geo::{DistanceMetric, SpatialIndex};
use crate::ingestion::{locations, CaseRecord};

/// Targets for [`calibrate_eps`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationCriteria {
    pub min_pts: usize,
    pub step_km: f64,
    pub max_eps_km: f64,
    pub min_clusters: usize,
    /// Largest tolerated noise fraction among non-imported cases.
    pub max_local_noise: f64,
}

impl Default for CalibrationCriteria {
    fn default() -> Self {
        CalibrationCriteria {
            min_pts: 3,
            step_km: 0.5,
            max_eps_km: 50.0,
            min_clusters: 4,
            max_local_noise: 0.10,
        }
    }
}

/// Smallest eps on the grid `step, 2·step, …` at which DBSCAN finds at least
/// `min_clusters` clusters while leaving at most `max_local_noise` of the
/// local (non-imported) cases as noise.
pub fn calibrate_eps(cases: &[CaseRecord], metric: DistanceMetric, criteria: &CalibrationCriteria) -> Result<Option<f64>> {
    let index = SpatialIndex::build(&locations(cases), metric)?;
    let local = cases.iter().filter(|c| !c.imported).count();
    let mut step = 1;
    loop {
        let eps = criteria.step_km * step as f64;
        if eps > criteria.max_eps_km {
            return Ok(None);
        }
        let a = dbscan(&index, &DbscanParams::new(eps, criteria.min_pts))?;
        let local_noise = cases
            .iter()
            .zip(&a.labels)
            .filter(|(c, l)| !c.imported && l.is_noise())
            .count();
        let noise_ok = local == 0 || local_noise as f64 <= criteria.max_local_noise * local as f64;
        if a.num_clusters >= criteria.min_clusters && noise_ok {
            return Ok(Some(eps));
        }
        step += 1;
    }
}
