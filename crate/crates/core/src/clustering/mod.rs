//! The four clustering algorithms and their shared output type.
//!
//! Every algorithm is deterministic: ties are broken by the lowest point
//! index, and the randomised k-means++ seeding is driven by the caller's
//! seed.

mod dbscan;
mod kmeans;
mod kmedoids;
mod optics;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dbscan::{core_mask, dbscan, DbscanParams};
pub use kmeans::{kmeans, KMeansFit, KMeansParams};
pub use kmedoids::{kmedoids, total_cost, KMedoidsFit, KMedoidsParams};
pub use optics::{extract_dbscan_clustering, optics, OpticsParams, ReachabilityPlot};

/// Per-point cluster label.
///
/// `Noise` is a distinct value that is never counted as a cluster. It sorts
/// after every cluster id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Cluster(usize),
    Noise,
}

impl Label {
    pub fn cluster(self) -> Option<usize> {
        match self {
            Label::Cluster(c) => Some(c),
            Label::Noise => None,
        }
    }

    pub fn is_noise(self) -> bool {
        self == Label::Noise
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Cluster(c) => write!(f, "{c}"),
            Label::Noise => f.write_str("noise"),
        }
    }
}

/// Output of every clustering algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterAssignment {
    pub labels: Vec<Label>,
    pub num_clusters: usize,
    /// Lloyd iterations or PAM swaps; 0 for density methods.
    pub iterations: usize,
    pub converged: bool,
}

impl ClusterAssignment {
    /// Wraps a label vector, checking that cluster ids are dense from 0.
    pub fn from_labels(labels: Vec<Label>, iterations: usize, converged: bool) -> Result<Self> {
        let ids: std::collections::BTreeSet<usize> = labels.iter().filter_map(|l| l.cluster()).collect();
        let num_clusters = ids.len();
        if ids.iter().copied().ne(0..num_clusters) {
            return Err(Error::InvalidInput(format!(
                "cluster ids are not dense from 0: {ids:?}"
            )));
        }
        Ok(ClusterAssignment {
            labels,
            num_clusters,
            iterations,
            converged,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_noise()).count()
    }

    pub fn noise_fraction(&self) -> f64 {
        if self.labels.is_empty() {
            0.0
        } else {
            self.noise_count() as f64 / self.labels.len() as f64
        }
    }

    /// Point indices per cluster id.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters];
        for (i, l) in self.labels.iter().enumerate() {
            if let Label::Cluster(c) = l {
                out[*c].push(i);
            }
        }
        out
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        self.members().iter().map(Vec::len).collect()
    }

    /// Renumbers clusters in order of first appearance. Useful for comparing
    /// two labellings that differ only by a permutation of ids.
    pub fn canonical_labels(&self) -> Vec<Label> {
        canonicalize(&self.labels)
    }
}

pub fn canonicalize(labels: &[Label]) -> Vec<Label> {
    let mut map = BTreeMap::new();
    labels
        .iter()
        .map(|l| match l {
            Label::Noise => Label::Noise,
            Label::Cluster(c) => {
                let next = map.len();
                Label::Cluster(*map.entry(*c).or_insert(next))
            }
        })
        .collect()
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("no points to cluster".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds point count {n}")));
    }
    Ok(())
}
