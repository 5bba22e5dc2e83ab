use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use super::{check_k, ClusterAssignment, Label};
use crate::error::{Error, Result};
use crate::geo::{mean_latitude, DistanceMetric, Equirectangular, GeoPoint, PlanarPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KMeansParams {
    pub k: usize,
    pub max_iter: usize,
    /// Largest centroid shift (in the metric's planar units) still counted
    /// as converged.
    pub tol: f64,
    pub seed: u64,
}

impl KMeansParams {
    pub fn new(k: usize, seed: u64) -> Self {
        KMeansParams {
            k,
            max_iter: 100,
            tol: 1e-6,
            seed,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        check_k(self.k, n)?;
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be non-negative, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansFit {
    pub assignment: ClusterAssignment,
    pub centroids: Vec<GeoPoint>,
    pub planar_centroids: Vec<PlanarPoint>,
    /// Final within-cluster sum of squared distances.
    pub wcss: f64,
    /// WCSS of the seeding followed by the value after every Lloyd
    /// iteration; non-increasing.
    pub wcss_history: Vec<f64>,
}

/// Plane in which means are taken. Geodesic metrics use the
/// equirectangular plane, where squared Euclidean distance is the objective.
enum Frame {
    Projected(Equirectangular),
    Raw,
}

impl Frame {
    fn for_metric(points: &[GeoPoint], metric: DistanceMetric) -> Result<Self> {
        let mean_lon = points.iter().map(|p| p.lon()).sum::<f64>() / points.len() as f64;
        let ref_lat = match metric {
            DistanceMetric::Euclidean => return Ok(Frame::Raw),
            DistanceMetric::Haversine => mean_latitude(points),
            DistanceMetric::Equirectangular { ref_lat } => ref_lat,
        };
        Ok(Frame::Projected(Equirectangular::new(GeoPoint::new(ref_lat, mean_lon)?)?))
    }

    fn to_plane(&self, p: GeoPoint) -> PlanarPoint {
        match self {
            Frame::Projected(proj) => proj.project(p),
            Frame::Raw => PlanarPoint::new(p.lon(), p.lat()),
        }
    }

    fn to_geo(&self, q: PlanarPoint) -> Result<GeoPoint> {
        match self {
            Frame::Projected(proj) => proj.unproject(q),
            Frame::Raw => GeoPoint::new(q.y, q.x),
        }
    }
}

/// Lloyd's algorithm with k-means++ seeding.
///
/// An empty cluster is reseeded with the point farthest from its current
/// centroid (taken from clusters that keep at least one member).
pub fn kmeans(points: &[GeoPoint], params: &KMeansParams, metric: DistanceMetric) -> Result<KMeansFit> {
    params.validate(points.len())?;
    metric.validate()?;
    let frame = Frame::for_metric(points, metric)?;
    let plane: Vec<PlanarPoint> = points.iter().map(|&p| frame.to_plane(p)).collect();
    let k = params.k;

    let mut centroids = plusplus_seeds(&plane, k, params.seed);
    let mut assign: Vec<usize> = plane.iter().map(|p| nearest(p, &centroids).0).collect();
    let mut history = vec![wcss(&plane, &assign, &centroids)];

    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        iterations += 1;
        for (a, p) in assign.iter_mut().zip(&plane) {
            *a = nearest(p, &centroids).0;
        }
        repair_empty(&plane, &mut assign, &mut centroids);
        let updated = means(&plane, &assign, k);
        let shift = centroids
            .iter()
            .zip(&updated)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max);
        centroids = updated;
        history.push(wcss(&plane, &assign, &centroids));
        if shift <= params.tol {
            converged = true;
            break;
        }
    }

    let labels = assign.iter().map(|&c| Label::Cluster(c)).collect();
    let assignment = ClusterAssignment::from_labels(labels, iterations, converged)?;
    let geo_centroids = centroids.iter().map(|&c| frame.to_geo(c)).collect::<Result<Vec<_>>>()?;
    Ok(KMeansFit {
        assignment,
        centroids: geo_centroids,
        planar_centroids: centroids,
        wcss: *history.last().unwrap_or(&0.0),
        wcss_history: history,
    })
}

fn plusplus_seeds(plane: &[PlanarPoint], k: usize, seed: u64) -> Vec<PlanarPoint> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let n = plane.len();
    let mut chosen = vec![false; n];
    let first = rng.gen_range(0..n);
    chosen[first] = true;
    let mut seeds = vec![plane[first]];
    let mut d2: Vec<f64> = plane.iter().map(|p| p.distance_sq(&plane[first])).collect();
    while seeds.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (i, &w) in d2.iter().enumerate() {
                if w <= 0.0 {
                    continue;
                }
                acc += w;
                pick = Some(i);
                if acc > target {
                    break;
                }
            }
            pick
        } else {
            None
        };
        // All remaining mass is zero: take the lowest unused index.
        let pick = pick.unwrap_or_else(|| (0..n).find(|&i| !chosen[i]).unwrap_or(0));
        chosen[pick] = true;
        seeds.push(plane[pick]);
        for (w, p) in d2.iter_mut().zip(plane) {
            *w = w.min(p.distance_sq(&plane[pick]));
        }
    }
    seeds
}

#[inline]
fn nearest(p: &PlanarPoint, centroids: &[PlanarPoint]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = p.distance_sq(centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn repair_empty(plane: &[PlanarPoint], assign: &mut [usize], centroids: &mut [PlanarPoint]) {
    let k = centroids.len();
    let mut sizes = vec![0usize; k];
    for &a in assign.iter() {
        sizes[a] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let mut far: Option<(usize, f64)> = None;
        for (i, p) in plane.iter().enumerate() {
            if sizes[assign[i]] < 2 {
                continue;
            }
            let d = p.distance_sq(&centroids[assign[i]]);
            if far.is_none_or(|(_, best)| d > best) {
                far = Some((i, d));
            }
        }
        if let Some((i, _)) = far {
            sizes[assign[i]] -= 1;
            assign[i] = empty;
            sizes[empty] = 1;
            centroids[empty] = plane[i];
        }
    }
}

fn means(plane: &[PlanarPoint], assign: &[usize], k: usize) -> Vec<PlanarPoint> {
    let mut sums = vec![(0.0, 0.0, 0usize); k];
    for (p, &a) in plane.iter().zip(assign) {
        sums[a].0 += p.x;
        sums[a].1 += p.y;
        sums[a].2 += 1;
    }
    sums.into_iter()
        .map(|(x, y, n)| PlanarPoint::new(x / n as f64, y / n as f64))
        .collect()
}

fn wcss(plane: &[PlanarPoint], assign: &[usize], centroids: &[PlanarPoint]) -> f64 {
    plane
        .iter()
        .zip(assign)
        .map(|(p, &a)| p.distance_sq(&centroids[a]))
        .sum()
}
