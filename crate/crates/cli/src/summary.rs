use epiclust::clustering::{ClusterAssignment, Label, ReachabilityPlot};
use epiclust::geo::{DistanceMetric, GeoPoint};
use epiclust::ingestion::CaseRecord;

use crate::error::CliError;

/// How each cluster's representative location is obtained.
pub enum Centers<'a> {
    /// k-means centroids, by cluster id.
    Centroids(&'a [GeoPoint]),
    /// k-medoids medoid indices, by cluster id.
    Medoids(&'a [usize]),
    /// Mean latitude and longitude of the members.
    Mean,
}

const UNDEFINED: &str = "undefined";

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Data(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Data(e.to_string())
}

fn mean_pairwise(points: &[GeoPoint], members: &[usize], metric: DistanceMetric) -> Option<f64> {
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            sum += metric.distance(points[i], points[j]);
            pairs += 1;
        }
    }
    (pairs > 0).then(|| sum / pairs as f64)
}

/// One row per cluster plus a `noise` row when any point is NOISE.
///
/// Header: `cluster,size,center_kind,center_lat,center_lon,mean_pairwise_distance`.
pub fn cluster_summary(
    points: &[GeoPoint],
    assignment: &ClusterAssignment,
    centers: Centers<'_>,
    metric: DistanceMetric,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["cluster", "size", "center_kind", "center_lat", "center_lon", "mean_pairwise_distance"])
        .map_err(csv_err)?;
    let opt = |v: Option<f64>| v.map_or(UNDEFINED.to_string(), |v| v.to_string());
    for (c, members) in assignment.members().iter().enumerate() {
        let (kind, center) = match centers {
            Centers::Centroids(c_pts) => ("centroid", c_pts[c]),
            Centers::Medoids(idx) => ("medoid", points[idx[c]]),
            Centers::Mean => {
                let n = members.len() as f64;
                let lat = members.iter().map(|&i| points[i].lat()).sum::<f64>() / n;
                let lon = members.iter().map(|&i| points[i].lon()).sum::<f64>() / n;
                ("mean", GeoPoint::new(lat, lon).map_err(CliError::from)?)
            }
        };
        w.write_record([
            c.to_string(),
            members.len().to_string(),
            kind.to_string(),
            center.lat().to_string(),
            center.lon().to_string(),
            opt(mean_pairwise(points, members, metric)),
        ])
        .map_err(csv_err)?;
    }
    let noise: Vec<usize> = (0..points.len()).filter(|&i| assignment.labels[i].is_noise()).collect();
    if !noise.is_empty() {
        w.write_record([
            "noise".to_string(),
            noise.len().to_string(),
            String::new(),
            String::new(),
            String::new(),
            opt(mean_pairwise(points, &noise, metric)),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

/// Header: `position,id,reachability,core_distance,label`.
pub fn reachability_csv(plot: &ReachabilityPlot, cases: &[CaseRecord], labels: &[Label]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["position", "id", "reachability", "core_distance", "label"])
        .map_err(csv_err)?;
    let opt = |v: Option<f64>| v.map_or(UNDEFINED.to_string(), |v| v.to_string());
    for (pos, (&p, &r)) in plot.ordering.iter().zip(&plot.reachability).enumerate() {
        w.write_record([
            pos.to_string(),
            cases[p].id.clone(),
            opt(r),
            opt(plot.core_distance[p]),
            labels[p].to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_rows_and_noise() {
        let points: Vec<GeoPoint> = [(0.0, 0.0), (0.0, 2.0), (5.0, 5.0), (9.0, 9.0)]
            .iter()
            .map(|&(a, b)| GeoPoint::new(a, b).unwrap())
            .collect();
        let labels = vec![Label::Cluster(0), Label::Cluster(0), Label::Cluster(1), Label::Noise];
        let a = ClusterAssignment::from_labels(labels, 0, true).unwrap();
        let csv = cluster_summary(&points, &a, Centers::Mean, DistanceMetric::Euclidean).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "cluster,size,center_kind,center_lat,center_lon,mean_pairwise_distance");
        assert_eq!(lines[1], "0,2,mean,0,1,2");
        assert_eq!(lines[2], "1,1,mean,5,5,undefined");
        assert_eq!(lines[3], "noise,1,,,,undefined");
    }
}
