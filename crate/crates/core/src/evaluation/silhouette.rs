use crate::clustering::{ClusterAssignment, Label};
use crate::error::{Error, Result};
use crate::geo::{DistanceMetric, GeoPoint};

/// Mean silhouette over non-noise points, or `None` with fewer than two
/// non-noise clusters.
///
/// For point `i` in cluster `A`, `a` is its mean distance to the rest of `A`
/// and `b` the smallest mean distance to another cluster; its score is
/// `(b - a) / max(a, b)`. Members of singleton clusters score 0. NOISE
/// points are left out entirely, both as subjects and as neighbours.
pub fn silhouette(points: &[GeoPoint], assignment: &ClusterAssignment, metric: DistanceMetric) -> Result<Option<f64>> {
    if points.len() != assignment.labels.len() {
        return Err(Error::InvalidInput(format!(
            "{} points but {} labels",
            points.len(),
            assignment.labels.len()
        )));
    }
    let k = assignment.num_clusters;
    if k < 2 {
        return Ok(None);
    }
    let sizes = assignment.cluster_sizes();
    let mut total = 0.0;
    let mut counted = 0usize;
    let mut sums = vec![0.0; k];
    for (i, label) in assignment.labels.iter().enumerate() {
        let Label::Cluster(own) = *label else { continue };
        counted += 1;
        if sizes[own] == 1 {
            continue;
        }
        sums.iter_mut().for_each(|s| *s = 0.0);
        for (j, other) in assignment.labels.iter().enumerate() {
            if let Label::Cluster(c) = *other {
                if j != i {
                    sums[c] += metric.distance(points[i], points[j]);
                }
            }
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..k)
            .filter(|&c| c != own)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
    }
    Ok(Some(total / counted as f64))
}
