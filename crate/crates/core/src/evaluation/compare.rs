use std::fmt;

use super::{adjusted_rand_index, fmt_opt, silhouette};
use crate::clustering::{
    dbscan, extract_dbscan_clustering, kmeans, kmedoids, optics, ClusterAssignment, DbscanParams, KMeansParams,
    KMedoidsParams, Label, OpticsParams,
};
use crate::error::{Error, Result};
use crate::geo::{DistanceMetric, GeoPoint, SpatialIndex};
use crate::ingestion::{locations, CaseRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    KMeans,
    KMedoids,
    Dbscan,
    Optics,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::KMeans, Algorithm::KMedoids, Algorithm::Dbscan, Algorithm::Optics];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::KMeans => "kmeans",
            Algorithm::KMedoids => "kmedoids",
            Algorithm::Dbscan => "dbscan",
            Algorithm::Optics => "optics",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonParams {
    pub kmeans: KMeansParams,
    pub kmedoids: KMedoidsParams,
    pub dbscan: DbscanParams,
    pub optics: OpticsParams,
    /// Radius of the DBSCAN-style cut through the OPTICS plot.
    pub eps_cut: f64,
}

impl ComparisonParams {
    /// k for both centroid methods, eps/min_pts for DBSCAN, and the same eps
    /// as the OPTICS cut over an unbounded reachability plot.
    pub fn new(k: usize, eps: f64, min_pts: usize, seed: u64) -> Self {
        ComparisonParams {
            kmeans: KMeansParams::new(k, seed),
            kmedoids: KMedoidsParams::new(k, seed),
            dbscan: DbscanParams::new(eps, min_pts),
            optics: OpticsParams::new(f64::INFINITY, min_pts),
            eps_cut: eps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmSummary {
    pub num_clusters: usize,
    pub noise_count: usize,
    pub noise_fraction: f64,
    pub silhouette: Option<f64>,
    /// WCSS for k-means, total medoid distance for k-medoids.
    pub objective: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmRun {
    pub algorithm: Algorithm,
    pub outcome: std::result::Result<(ClusterAssignment, AlgorithmSummary), String>,
}

impl AlgorithmRun {
    pub fn assignment(&self) -> Option<&ClusterAssignment> {
        self.outcome.as_ref().ok().map(|(a, _)| a)
    }

    pub fn summary(&self) -> Option<&AlgorithmSummary> {
        self.outcome.as_ref().ok().map(|(_, s)| s)
    }
}

/// Tehsil × cluster counts for one labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TehsilContingency {
    /// Row keys, in order of first appearance.
    pub tehsils: Vec<String>,
    /// Column keys: clusters ascending, NOISE last if present.
    pub labels: Vec<Label>,
    pub counts: Vec<Vec<usize>>,
}

impl TehsilContingency {
    pub fn new(tehsils: &[&str], labels: &[Label]) -> Self {
        let mut rows: Vec<String> = Vec::new();
        for t in tehsils {
            if !rows.iter().any(|r| r == t) {
                rows.push(t.to_string());
            }
        }
        let mut cols: Vec<Label> = labels.to_vec();
        cols.sort_unstable();
        cols.dedup();
        let mut counts = vec![vec![0; cols.len()]; rows.len()];
        for (t, l) in tehsils.iter().zip(labels) {
            let r = rows.iter().position(|x| x == t).expect("row exists");
            let c = cols.binary_search(l).expect("column exists");
            counts[r][c] += 1;
        }
        TehsilContingency {
            tehsils: rows,
            labels: cols,
            counts,
        }
    }

    /// The label holding most of `tehsil`'s cases (lowest label on ties).
    pub fn majority(&self, tehsil: &str) -> Option<Label> {
        let r = self.tehsils.iter().position(|t| t == tehsil)?;
        let row = &self.counts[r];
        let mut best: Option<(usize, usize)> = None;
        for (c, &n) in row.iter().enumerate() {
            if n > 0 && best.is_none_or(|(_, b)| n > b) {
                best = Some((c, n));
            }
        }
        best.map(|(c, _)| self.labels[c])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub metric: DistanceMetric,
    pub runs: Vec<AlgorithmRun>,
    /// `ari[i][j]` between runs `i` and `j`; `None` if either failed.
    pub ari: Vec<Vec<Option<f64>>>,
    /// Per-run tehsil contingency, `None` for failed runs.
    pub per_tehsil: Vec<Option<TehsilContingency>>,
}

impl ComparisonReport {
    pub fn run(&self, algorithm: Algorithm) -> &AlgorithmRun {
        self.runs.iter().find(|r| r.algorithm == algorithm).expect("every algorithm runs")
    }

    pub fn ari_between(&self, a: Algorithm, b: Algorithm) -> Option<f64> {
        let i = self.runs.iter().position(|r| r.algorithm == a)?;
        let j = self.runs.iter().position(|r| r.algorithm == b)?;
        self.ari[i][j]
    }

    pub fn contingency(&self, algorithm: Algorithm) -> Option<&TehsilContingency> {
        let i = self.runs.iter().position(|r| r.algorithm == algorithm)?;
        self.per_tehsil[i].as_ref()
    }

    pub fn failures(&self) -> usize {
        self.runs.iter().filter(|r| r.outcome.is_err()).count()
    }

    /// One row per algorithm with header
    /// `algorithm,status,num_clusters,noise_count,noise_fraction,silhouette,objective,ari_<algo>…`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = [
            "algorithm",
            "status",
            "num_clusters",
            "noise_count",
            "noise_fraction",
            "silhouette",
            "objective",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        header.extend(self.runs.iter().map(|r| format!("ari_{}", r.algorithm)));
        w.write_record(&header)?;
        for (i, run) in self.runs.iter().enumerate() {
            let mut row = vec![run.algorithm.to_string()];
            match &run.outcome {
                Ok((_, s)) => row.extend([
                    "ok".to_string(),
                    s.num_clusters.to_string(),
                    s.noise_count.to_string(),
                    s.noise_fraction.to_string(),
                    fmt_opt(s.silhouette),
                    fmt_opt(s.objective),
                ]),
                Err(e) => {
                    row.push(format!("failed: {e}"));
                    row.extend(std::iter::repeat_n(String::new(), 5));
                }
            }
            row.extend(self.ari[i].iter().map(|&v| fmt_opt(v)));
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Runs all four algorithms on the same cases.
///
/// A failing algorithm is recorded in its run and the others still execute.
pub fn compare_algorithms(cases: &[CaseRecord], params: &ComparisonParams, metric: DistanceMetric) -> Result<ComparisonReport> {
    metric.validate()?;
    let points = locations(cases);
    let index = SpatialIndex::build(&points, metric)?;

    let mut runs = Vec::with_capacity(4);
    for algorithm in Algorithm::ALL {
        let result: Result<(ClusterAssignment, Option<f64>)> = match algorithm {
            Algorithm::KMeans => kmeans(&points, &params.kmeans, metric).map(|f| (f.assignment, Some(f.wcss))),
            Algorithm::KMedoids => kmedoids(&points, &params.kmedoids, metric).map(|f| (f.assignment, Some(f.cost))),
            Algorithm::Dbscan => dbscan(&index, &params.dbscan).map(|a| (a, None)),
            Algorithm::Optics => optics(&index, &params.optics)
                .and_then(|plot| extract_dbscan_clustering(&plot, params.eps_cut))
                .map(|a| (a, None)),
        };
        let outcome = result
            .and_then(|(assignment, objective)| {
                let summary = summarize(&points, &assignment, objective, metric)?;
                Ok((assignment, summary))
            })
            .map_err(|e| e.to_string());
        runs.push(AlgorithmRun { algorithm, outcome });
    }

    let ari = runs
        .iter()
        .map(|a| {
            runs.iter()
                .map(|b| match (a.assignment(), b.assignment()) {
                    (Some(x), Some(y)) => adjusted_rand_index(&x.labels, &y.labels).ok(),
                    _ => None,
                })
                .collect()
        })
        .collect();
    let tehsils: Vec<&str> = cases.iter().map(|c| c.tehsil.as_str()).collect();
    let per_tehsil = runs
        .iter()
        .map(|r| r.assignment().map(|a| TehsilContingency::new(&tehsils, &a.labels)))
        .collect();

    Ok(ComparisonReport {
        metric,
        runs,
        ari,
        per_tehsil,
    })
}

fn summarize(
    points: &[GeoPoint],
    assignment: &ClusterAssignment,
    objective: Option<f64>,
    metric: DistanceMetric,
) -> Result<AlgorithmSummary> {
    Ok(AlgorithmSummary {
        num_clusters: assignment.num_clusters,
        noise_count: assignment.noise_count(),
        noise_fraction: assignment.noise_fraction(),
        silhouette: silhouette(points, assignment, metric)?,
        objective,
    })
}
