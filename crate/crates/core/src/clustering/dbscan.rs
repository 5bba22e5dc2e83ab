use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{ClusterAssignment, Label};
use crate::error::{Error, Result};
use crate::geo::SpatialIndex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DbscanParams {
    /// Neighbourhood radius in metric units (km for geodesic metrics).
    pub eps: f64,
    /// Minimum closed-neighbourhood size, the point itself included.
    pub min_pts: usize,
}

impl DbscanParams {
    pub fn new(eps: f64, min_pts: usize) -> Self {
        DbscanParams { eps, min_pts }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "eps must be positive and finite, got {}",
                self.eps
            )));
        }
        if self.min_pts == 0 {
            return Err(Error::InvalidParameter("min_pts must be at least 1".into()));
        }
        Ok(())
    }
}

/// DBSCAN over the points of `index`.
///
/// Points are visited in ascending index order and clusters are numbered in
/// discovery order. Each cluster is expanded breadth-first from its seed;
/// a border point reachable from two clusters keeps the first one that
/// reaches it.
pub fn dbscan(index: &SpatialIndex, params: &DbscanParams) -> Result<ClusterAssignment> {
    params.validate()?;
    let n = index.len();
    let mut labels: Vec<Option<Label>> = vec![None; n];
    let mut next_cluster = 0;

    for p in 0..n {
        if labels[p].is_some() {
            continue;
        }
        let neighbors = index.neighbors(p, params.eps);
        if neighbors.len() < params.min_pts {
            labels[p] = Some(Label::Noise);
            continue;
        }
        let cluster = Label::Cluster(next_cluster);
        next_cluster += 1;
        labels[p] = Some(cluster);

        let mut queue: VecDeque<usize> = neighbors.into_iter().filter(|&q| q != p).collect();
        while let Some(q) = queue.pop_front() {
            match labels[q] {
                // Noise was only ever assigned to non-core points: claim it as border.
                Some(Label::Noise) => {
                    labels[q] = Some(cluster);
                    continue;
                }
                Some(_) => continue,
                None => {}
            }
            labels[q] = Some(cluster);
            let q_neighbors = index.neighbors(q, params.eps);
            if q_neighbors.len() >= params.min_pts {
                queue.extend(q_neighbors);
            }
        }
    }

    let labels = labels.into_iter().map(|l| l.unwrap_or(Label::Noise)).collect();
    ClusterAssignment::from_labels(labels, 0, true)
}

/// `true` for every point whose closed `eps`-neighbourhood holds at least
/// `min_pts` points.
pub fn core_mask(index: &SpatialIndex, eps: f64, min_pts: usize) -> Vec<bool> {
    (0..index.len())
        .map(|i| index.neighbors(i, eps).len() >= min_pts)
        .collect()
}
