use std::collections::BTreeSet;

use ordered_float::OrderedFloat;
use serde::{Deserialize, Serialize};

use super::{ClusterAssignment, Label};
use crate::error::{Error, Result};
use crate::geo::SpatialIndex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticsParams {
    /// Neighbourhood cap; `f64::INFINITY` means unbounded.
    pub max_eps: f64,
    pub min_pts: usize,
}

impl OpticsParams {
    pub fn new(max_eps: f64, min_pts: usize) -> Self {
        OpticsParams { max_eps, min_pts }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_eps.is_nan() || self.max_eps <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "max_eps must be positive, got {}",
                self.max_eps
            )));
        }
        if self.min_pts == 0 {
            return Err(Error::InvalidParameter("min_pts must be at least 1".into()));
        }
        Ok(())
    }
}

/// OPTICS output. `None` stands for an undefined distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReachabilityPlot {
    /// Point indices in visit order.
    pub ordering: Vec<usize>,
    /// Reachability of `ordering[i]`, indexed by position in the ordering.
    pub reachability: Vec<Option<f64>>,
    /// Core distance, indexed by point.
    pub core_distance: Vec<Option<f64>>,
    pub max_eps: f64,
    pub min_pts: usize,
}

impl ReachabilityPlot {
    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    /// Reachability indexed by point rather than by ordering position.
    pub fn reachability_by_point(&self) -> Vec<Option<f64>> {
        let mut out = vec![None; self.ordering.len()];
        for (pos, &p) in self.ordering.iter().enumerate() {
            out[p] = self.reachability[pos];
        }
        out
    }
}

/// Computes the OPTICS ordering.
///
/// Unprocessed points start new batches in ascending index order. Within a
/// batch the seed with the smallest reachability is expanded next, ties
/// going to the lower index. The core distance counts the point itself, so it
/// is the distance to the `min_pts`-th closest point including itself.
pub fn optics(index: &SpatialIndex, params: &OpticsParams) -> Result<ReachabilityPlot> {
    params.validate()?;
    let n = index.len();
    let mut processed = vec![false; n];
    let mut reach: Vec<Option<f64>> = vec![None; n];
    let mut core_distance: Vec<Option<f64>> = vec![None; n];
    let mut ordering = Vec::with_capacity(n);
    let mut reachability = Vec::with_capacity(n);
    let mut seeds: BTreeSet<(OrderedFloat<f64>, usize)> = BTreeSet::new();

    for start in 0..n {
        if processed[start] {
            continue;
        }
        let mut next = Some(start);
        while let Some(p) = next {
            processed[p] = true;
            ordering.push(p);
            reachability.push(reach[p]);

            let neighbors = index.neighbors_with_distance(p, params.max_eps);
            core_distance[p] = core_distance_of(&neighbors, params.min_pts);
            if let Some(core) = core_distance[p] {
                for &(o, d) in &neighbors {
                    if processed[o] {
                        continue;
                    }
                    let candidate = core.max(d);
                    match reach[o] {
                        None => {
                            reach[o] = Some(candidate);
                            seeds.insert((OrderedFloat(candidate), o));
                        }
                        Some(old) if candidate < old => {
                            seeds.remove(&(OrderedFloat(old), o));
                            reach[o] = Some(candidate);
                            seeds.insert((OrderedFloat(candidate), o));
                        }
                        Some(_) => {}
                    }
                }
            }
            next = seeds.pop_first().map(|(_, o)| o);
        }
    }

    Ok(ReachabilityPlot {
        ordering,
        reachability,
        core_distance,
        max_eps: params.max_eps,
        min_pts: params.min_pts,
    })
}

fn core_distance_of(neighbors: &[(usize, f64)], min_pts: usize) -> Option<f64> {
    if neighbors.len() < min_pts {
        return None;
    }
    let mut d: Vec<f64> = neighbors.iter().map(|&(_, d)| d).collect();
    let (_, kth, _) = d.select_nth_unstable_by(min_pts - 1, f64::total_cmp);
    Some(*kth)
}

/// Flat DBSCAN-style clustering read off a reachability plot at radius
/// `eps_prime`.
///
/// Core points receive the same partition as `dbscan(eps_prime, min_pts)`.
/// Border points may land in a different cluster than DBSCAN would put them,
/// or become noise, because the ordering only records each point's smallest
/// reachability.
pub fn extract_dbscan_clustering(plot: &ReachabilityPlot, eps_prime: f64) -> Result<ClusterAssignment> {
    if eps_prime.is_nan() || eps_prime <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "eps_prime must be positive, got {eps_prime}"
        )));
    }
    if eps_prime > plot.max_eps {
        return Err(Error::InvalidParameter(format!(
            "eps_prime {eps_prime} exceeds the plot's max_eps {}",
            plot.max_eps
        )));
    }
    let mut labels = vec![Label::Noise; plot.len()];
    let mut current: Option<usize> = None;
    let mut next_cluster = 0;
    for (pos, &p) in plot.ordering.iter().enumerate() {
        let reachable = plot.reachability[pos].is_some_and(|r| r <= eps_prime);
        if reachable {
            if let Some(c) = current {
                labels[p] = Label::Cluster(c);
            }
        } else if plot.core_distance[p].is_some_and(|c| c <= eps_prime) {
            current = Some(next_cluster);
            labels[p] = Label::Cluster(next_cluster);
            next_cluster += 1;
        }
    }
    ClusterAssignment::from_labels(labels, 0, true)
}
