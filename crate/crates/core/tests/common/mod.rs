//! Reference implementations and data generators shared by the integration
//! tests. Everything here is deliberately naive: linear scans, full
//! enumeration, textbook formulas.
#![allow(dead_code)]

use std::collections::VecDeque;

use epiclust::clustering::Label;
use epiclust::geo::{DistanceMetric, GeoPoint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const KM_PER_DEGREE: f64 = 6371.0 * std::f64::consts::PI / 180.0;

/// Great-circle distance by the spherical law of cosines.
pub fn law_of_cosines_km(a: GeoPoint, b: GeoPoint) -> f64 {
    let (p1, p2) = (a.lat().to_radians(), b.lat().to_radians());
    let dl = (b.lon() - a.lon()).to_radians();
    let c = p1.sin() * p2.sin() + p1.cos() * p2.cos() * dl.cos();
    6371.0 * c.clamp(-1.0, 1.0).acos()
}

/// Great-circle distance from unit vectors, `atan2(|a×b|, a·b)`.
pub fn vector_angle_km(a: GeoPoint, b: GeoPoint) -> f64 {
    let unit = |p: GeoPoint| {
        let (phi, lam) = (p.lat().to_radians(), p.lon().to_radians());
        [phi.cos() * lam.cos(), phi.cos() * lam.sin(), phi.sin()]
    };
    let (u, v) = (unit(a), unit(b));
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    6371.0 * norm.atan2(dot)
}

fn scan(points: &[GeoPoint], metric: DistanceMetric, i: usize, eps: f64) -> Vec<usize> {
    (0..points.len())
        .filter(|&j| metric.distance(points[i], points[j]) <= eps)
        .collect()
}

/// Textbook DBSCAN over linear-scan neighbourhoods.
pub fn naive_dbscan(points: &[GeoPoint], metric: DistanceMetric, eps: f64, min_pts: usize) -> Vec<Label> {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Unvisited,
        Noise,
        In(usize),
    }
    let n = points.len();
    let mut state = vec![State::Unvisited; n];
    let mut next = 0;
    for i in 0..n {
        if state[i] != State::Unvisited {
            continue;
        }
        let seeds = scan(points, metric, i, eps);
        if seeds.len() < min_pts {
            state[i] = State::Noise;
            continue;
        }
        let c = next;
        next += 1;
        state[i] = State::In(c);
        let mut queue: VecDeque<usize> = seeds.into_iter().collect();
        while let Some(j) = queue.pop_front() {
            match state[j] {
                State::Noise => state[j] = State::In(c),
                State::Unvisited => {
                    state[j] = State::In(c);
                    let nb = scan(points, metric, j, eps);
                    if nb.len() >= min_pts {
                        queue.extend(nb);
                    }
                }
                State::In(_) => {}
            }
        }
    }
    state
        .into_iter()
        .map(|s| match s {
            State::In(c) => Label::Cluster(c),
            _ => Label::Noise,
        })
        .collect()
}

pub struct NaiveOptics {
    pub ordering: Vec<usize>,
    pub reachability: Vec<Option<f64>>,
    pub core_distance: Vec<Option<f64>>,
}

/// OPTICS with an array-scanned seed list (smallest reachability, then
/// smallest index).
pub fn naive_optics(points: &[GeoPoint], metric: DistanceMetric, max_eps: f64, min_pts: usize) -> NaiveOptics {
    let n = points.len();
    let core_distance: Vec<Option<f64>> = (0..n)
        .map(|i| {
            let mut d: Vec<f64> = (0..n)
                .map(|j| metric.distance(points[i], points[j]))
                .filter(|&d| d <= max_eps)
                .collect();
            d.sort_by(f64::total_cmp);
            d.get(min_pts - 1).copied()
        })
        .collect();
    let mut reach: Vec<Option<f64>> = vec![None; n];
    let mut done = vec![false; n];
    let mut ordering = Vec::with_capacity(n);
    let mut reachability = Vec::with_capacity(n);
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut current = Some(start);
        while let Some(p) = current {
            done[p] = true;
            ordering.push(p);
            reachability.push(reach[p]);
            if let Some(cd) = core_distance[p] {
                for o in 0..n {
                    let d = metric.distance(points[p], points[o]);
                    if done[o] || d > max_eps {
                        continue;
                    }
                    let r = cd.max(d);
                    if reach[o].is_none_or(|old| r < old) {
                        reach[o] = Some(r);
                    }
                }
            }
            current = None;
            let mut best = f64::INFINITY;
            for o in 0..n {
                if let (false, Some(r)) = (done[o], reach[o]) {
                    if current.is_none() || r < best {
                        best = r;
                        current = Some(o);
                    }
                }
            }
        }
    }
    NaiveOptics {
        ordering,
        reachability,
        core_distance,
    }
}

/// Silhouette by direct definition; NOISE excluded, singletons score 0.
pub fn brute_silhouette(points: &[GeoPoint], labels: &[Label], metric: DistanceMetric) -> Option<f64> {
    let clusters: Vec<usize> = {
        let mut c: Vec<usize> = labels.iter().filter_map(|l| l.cluster()).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    if clusters.len() < 2 {
        return None;
    }
    let mut scores = Vec::new();
    for (i, li) in labels.iter().enumerate() {
        let Some(own) = li.cluster() else { continue };
        let mean_to = |c: usize| {
            let others: Vec<f64> = (0..points.len())
                .filter(|&j| j != i && labels[j] == Label::Cluster(c))
                .map(|j| metric.distance(points[i], points[j]))
                .collect();
            (others.iter().sum::<f64>(), others.len())
        };
        let (own_sum, own_n) = mean_to(own);
        if own_n == 0 {
            scores.push(0.0);
            continue;
        }
        let a = own_sum / own_n as f64;
        let b = clusters
            .iter()
            .filter(|&&c| c != own)
            .map(|&c| {
                let (s, m) = mean_to(c);
                s / m as f64
            })
            .fold(f64::INFINITY, f64::min);
        scores.push(if a.max(b) > 0.0 { (b - a) / a.max(b) } else { 0.0 });
    }
    Some(scores.iter().sum::<f64>() / scores.len() as f64)
}

/// ARI from the four pair counts (same/same, same/diff, diff/same, diff/diff).
pub fn pair_counting_ari(x: &[Label], y: &[Label]) -> f64 {
    let (mut ss, mut sd, mut ds, mut dd) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            match (x[i] == x[j], y[i] == y[j]) {
                (true, true) => ss += 1.0,
                (true, false) => sd += 1.0,
                (false, true) => ds += 1.0,
                (false, false) => dd += 1.0,
            }
        }
    }
    let denom = (ss + sd) * (sd + dd) + (ss + ds) * (ds + dd);
    if denom == 0.0 {
        return 1.0;
    }
    2.0 * (ss * dd - sd * ds) / denom
}

/// Lowest total distance to the nearest medoid over every k-subset.
pub fn exhaustive_kmedoids_cost(points: &[GeoPoint], k: usize, metric: DistanceMetric) -> f64 {
    fn walk(start: usize, n: usize, k: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if chosen.len() == k {
            visit(chosen);
            return;
        }
        for m in start..n {
            chosen.push(m);
            walk(m + 1, n, k, chosen, visit);
            chosen.pop();
        }
    }
    let mut best = f64::INFINITY;
    walk(0, points.len(), k, &mut Vec::new(), &mut |medoids| {
        let cost: f64 = points
            .iter()
            .map(|&p| {
                medoids
                    .iter()
                    .map(|&m| metric.distance(p, points[m]))
                    .fold(f64::INFINITY, f64::min)
            })
            .sum();
        best = best.min(cost);
    });
    best
}

/// Standard normal pair via Box–Muller.
pub fn normal_pair(rng: &mut StdRng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    (r * t.cos(), r * t.sin())
}

/// Point `(dx_km, dy_km)` east/north of `(lat, lon)`.
pub fn offset(lat: f64, lon: f64, dx_km: f64, dy_km: f64) -> GeoPoint {
    let lat2 = lat + dy_km / KM_PER_DEGREE;
    let lon2 = lon + dx_km / (KM_PER_DEGREE * lat.to_radians().cos());
    GeoPoint::new(lat2, lon2).unwrap()
}

/// Gaussian blobs of varying tightness plus uniform background, around
/// (33.0, 73.5).
pub fn mixed_density(seed: u64, n: usize) -> Vec<GeoPoint> {
    let mut rng = StdRng::seed_from_u64(seed);
    let blobs = rng.gen_range(2..=5);
    let centers: Vec<(f64, f64, f64)> = (0..blobs)
        .map(|_| (rng.gen_range(-15.0..15.0), rng.gen_range(-15.0..15.0), rng.gen_range(0.2..2.5)))
        .collect();
    let background = n / 6;
    (0..n)
        .map(|i| {
            if i < background {
                offset(33.0, 73.5, rng.gen_range(-25.0..25.0), rng.gen_range(-25.0..25.0))
            } else {
                let (cx, cy, s) = centers[rng.gen_range(0..blobs)];
                let (z1, z2) = normal_pair(&mut rng);
                offset(33.0, 73.5, cx + s * z1, cy + s * z2)
            }
        })
        .collect()
}

/// Gaussian blobs with `sigma_km` around the given centres, `per` points each.
pub fn blobs(seed: u64, centers: &[(f64, f64)], per: usize, sigma_km: f64) -> (Vec<GeoPoint>, Vec<Label>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut truth = Vec::new();
    for (c, &(lat, lon)) in centers.iter().enumerate() {
        for _ in 0..per {
            let (z1, z2) = normal_pair(&mut rng);
            points.push(offset(lat, lon, sigma_km * z1, sigma_km * z2));
            truth.push(Label::Cluster(c));
        }
    }
    (points, truth)
}

/// The three metrics in rotation, with eps scaled to the metric's units.
pub fn metric_for(seed: u64, eps_km: f64) -> (DistanceMetric, f64) {
    match seed % 3 {
        0 => (DistanceMetric::Haversine, eps_km),
        1 => (DistanceMetric::equirectangular(33.0).unwrap(), eps_km),
        _ => (DistanceMetric::Euclidean, eps_km / KM_PER_DEGREE),
    }
}
