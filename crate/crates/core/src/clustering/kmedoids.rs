use serde::{Deserialize, Serialize};

use super::{check_k, ClusterAssignment, Label};
use crate::error::{Error, Result};
use crate::geo::{DistanceMetric, GeoPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KMedoidsParams {
    pub k: usize,
    /// Upper bound on accepted swaps.
    pub max_iter: usize,
    /// Carried for interface symmetry with k-means. PAM's BUILD phase is
    /// deterministic, so the result does not depend on it.
    pub seed: u64,
}

impl KMedoidsParams {
    pub fn new(k: usize, seed: u64) -> Self {
        KMedoidsParams { k, max_iter: 100, seed }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMedoidsFit {
    pub assignment: ClusterAssignment,
    /// Point indices of the medoids; cluster `c` is represented by `medoids[c]`.
    pub medoids: Vec<usize>,
    /// Sum over points of the distance to the nearest medoid.
    pub cost: f64,
    /// Cost after BUILD followed by the cost after every accepted swap;
    /// strictly decreasing.
    pub cost_history: Vec<f64>,
}

/// Sum of distances from every point to its nearest medoid, accumulated in
/// point order.
pub fn total_cost(dist: &[Vec<f64>], medoids: &[usize]) -> f64 {
    dist.iter()
        .map(|row| medoids.iter().map(|&m| row[m]).fold(f64::INFINITY, f64::min))
        .sum()
}

/// Partitioning Around Medoids: greedy BUILD, then SWAP until no exchange of
/// a medoid with a non-medoid strictly lowers the total cost.
pub fn kmedoids(points: &[GeoPoint], params: &KMedoidsParams, metric: DistanceMetric) -> Result<KMedoidsFit> {
    check_k(params.k, points.len())?;
    metric.validate()?;
    if params.max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
    }
    let n = points.len();
    let dist: Vec<Vec<f64>> = points
        .iter()
        .map(|&a| points.iter().map(|&b| metric.distance(a, b)).collect())
        .collect();

    let mut medoids = build(&dist, params.k);
    let mut is_medoid = vec![false; n];
    for &m in &medoids {
        is_medoid[m] = true;
    }
    let mut cost = total_cost(&dist, &medoids);
    let mut history = vec![cost];

    let mut swaps = 0;
    let mut converged = false;
    while swaps < params.max_iter {
        let (near, second) = nearest_two(&dist, &medoids);
        let mut best: Option<(f64, usize, usize)> = None;
        for slot in 0..medoids.len() {
            for candidate in (0..n).filter(|&o| !is_medoid[o]) {
                let delta = swap_delta(&dist, &near, &second, slot, candidate);
                if best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, slot, candidate));
                }
            }
        }
        let Some((delta, slot, candidate)) = best else {
            converged = true;
            break;
        };
        if delta >= 0.0 {
            converged = true;
            break;
        }
        let mut trial = medoids.clone();
        trial[slot] = candidate;
        let trial_cost = total_cost(&dist, &trial);
        // The incremental delta can disagree with a full recompute in the last
        // bits; only a strict decrease of the recomputed cost is accepted.
        if trial_cost >= cost {
            converged = true;
            break;
        }
        is_medoid[medoids[slot]] = false;
        is_medoid[candidate] = true;
        medoids = trial;
        cost = trial_cost;
        history.push(cost);
        swaps += 1;
    }

    let labels = assign(&dist, &medoids);
    Ok(KMedoidsFit {
        assignment: ClusterAssignment::from_labels(labels, swaps, converged)?,
        medoids,
        cost,
        cost_history: history,
    })
}

fn build(dist: &[Vec<f64>], k: usize) -> Vec<usize> {
    let n = dist.len();
    let mut nearest = vec![f64::INFINITY; n];
    let mut chosen = vec![false; n];
    let mut medoids = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(f64, usize)> = None;
        for c in (0..n).filter(|&c| !chosen[c]) {
            let cost: f64 = (0..n).map(|i| nearest[i].min(dist[i][c])).sum();
            if best.is_none_or(|(b, _)| cost < b) {
                best = Some((cost, c));
            }
        }
        let (_, c) = best.expect("k <= n leaves a candidate");
        chosen[c] = true;
        medoids.push(c);
        for i in 0..n {
            nearest[i] = nearest[i].min(dist[i][c]);
        }
    }
    medoids
}

/// For every point: (slot of nearest medoid, its distance) and the distance
/// to the second-nearest medoid.
fn nearest_two(dist: &[Vec<f64>], medoids: &[usize]) -> (Vec<(usize, f64)>, Vec<f64>) {
    let mut near = Vec::with_capacity(dist.len());
    let mut second = Vec::with_capacity(dist.len());
    for row in dist {
        let mut first = (0, f64::INFINITY);
        let mut next = f64::INFINITY;
        for (slot, &m) in medoids.iter().enumerate() {
            let d = row[m];
            if d < first.1 {
                next = first.1;
                first = (slot, d);
            } else if d < next {
                next = d;
            }
        }
        near.push(first);
        second.push(next);
    }
    (near, second)
}

fn swap_delta(dist: &[Vec<f64>], near: &[(usize, f64)], second: &[f64], slot: usize, candidate: usize) -> f64 {
    let mut delta = 0.0;
    for (i, row) in dist.iter().enumerate() {
        let to_candidate = row[candidate];
        let (nearest_slot, d_near) = near[i];
        let new = if nearest_slot == slot {
            second[i].min(to_candidate)
        } else {
            d_near.min(to_candidate)
        };
        delta += new - d_near;
    }
    delta
}

fn assign(dist: &[Vec<f64>], medoids: &[usize]) -> Vec<Label> {
    dist.iter()
        .enumerate()
        .map(|(i, row)| {
            if let Some(slot) = medoids.iter().position(|&m| m == i) {
                return Label::Cluster(slot);
            }
            let mut best = (0, f64::INFINITY);
            for (slot, &m) in medoids.iter().enumerate() {
                if row[m] < best.1 {
                    best = (slot, row[m]);
                }
            }
            Label::Cluster(best.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(coords: &[(f64, f64)]) -> Vec<GeoPoint> {
        coords.iter().map(|&(a, b)| GeoPoint::new(a, b).unwrap()).collect()
    }

    #[test]
    fn k_equals_n_costs_nothing() {
        let points = pts(&[(32.9, 73.7), (33.0, 73.6), (32.8, 73.8), (32.6, 73.0)]);
        let fit = kmedoids(&points, &KMedoidsParams::new(4, 0), DistanceMetric::Haversine).unwrap();
        assert_eq!(fit.cost, 0.0);
        let mut meds = fit.medoids.clone();
        meds.sort_unstable();
        assert_eq!(meds, vec![0, 1, 2, 3]);
        assert_eq!(fit.assignment.num_clusters, 4);
    }

    #[test]
    fn one_median_is_exhaustive_minimum() {
        let points = pts(&[(0.0, 0.0), (0.0, 1.0), (0.0, 2.0), (0.0, 10.0), (1.0, 1.0)]);
        let metric = DistanceMetric::Euclidean;
        let fit = kmedoids(&points, &KMedoidsParams::new(1, 0), metric).unwrap();
        let best = (0..points.len())
            .map(|c| (points.iter().map(|&p| metric.distance(p, points[c])).sum::<f64>(), c))
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
            .unwrap();
        assert_eq!(fit.medoids, vec![best.1]);
        assert_eq!(fit.cost, best.0);
    }

    #[test]
    fn medoids_are_dataset_points_and_history_decreases() {
        let points: Vec<GeoPoint> = (0..40)
            .map(|i| {
                let f = i as f64;
                GeoPoint::new(32.5 + (f * 0.618).fract() * 0.5, 73.0 + (f * 0.414).fract() * 0.8).unwrap()
            })
            .collect();
        let fit = kmedoids(&points, &KMedoidsParams::new(3, 0), DistanceMetric::Haversine).unwrap();
        assert!(fit.medoids.iter().all(|&m| m < points.len()));
        for w in fit.cost_history.windows(2) {
            assert!(w[1] < w[0]);
        }
        assert!(fit.assignment.converged);
    }

    #[test]
    fn errors() {
        let points = pts(&[(0.0, 0.0)]);
        assert!(matches!(
            kmedoids(&points, &KMedoidsParams::new(2, 0), DistanceMetric::Haversine),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            kmedoids(&[], &KMedoidsParams::new(1, 0), DistanceMetric::Haversine),
            Err(Error::InvalidInput(_))
        ));
    }
}
