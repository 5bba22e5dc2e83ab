use clap::ArgMatches;
use epiclust::clustering::{
    dbscan, extract_dbscan_clustering, kmeans, kmedoids, optics, ClusterAssignment, DbscanParams, KMeansParams,
    KMedoidsParams, OpticsParams,
};
use epiclust::geo::SpatialIndex;
use epiclust::ingestion::to_geojson_string;
use serde_json::json;

use super::{given, unit, Done};
use crate::cli::{AlgoArg, ClusterArgs, PARAM_FLAGS};
use crate::error::CliError;
use crate::input::Dataset;
use crate::output::{Output, RunManifest, GENERATOR};
use crate::summary::{cluster_summary, reachability_csv, Centers};
use crate::svg;

/// Rejects parameter flags the chosen algorithm does not read.
fn check_flags(algo: AlgoArg, matches: &ArgMatches) -> Result<(), CliError> {
    for (id, flag) in PARAM_FLAGS {
        if given(matches, id) && !algo.accepts(id) {
            return Err(CliError::Usage(format!("{flag} does not apply to --algo {}", algo.name())));
        }
    }
    Ok(())
}

fn required(value: Option<f64>, flag: &str, algo: AlgoArg) -> Result<f64, CliError> {
    value.ok_or_else(|| {
        CliError::Usage(format!(
            "{flag} is required for --algo {} (the input records no default)",
            algo.name()
        ))
    })
}

pub fn run(args: &ClusterArgs, matches: &ArgMatches) -> Result<Done, CliError> {
    let algo = args.algo;
    check_flags(algo, matches)?;
    let data = Dataset::load(&args.input)?;
    let p = &args.params;
    let metric = data.metric;
    let k = p.k.unwrap_or_else(|| data.default_k());
    let seed = p.seed.or(data.seed).unwrap_or(0);
    let min_pts = p.min_pts.unwrap_or_else(|| data.default_min_pts());

    let mut out = Output::new(&args.input.out);
    let title;
    let params;
    let assignment: ClusterAssignment;
    match algo {
        AlgoArg::Kmeans => {
            let fit = kmeans(&data.points, &KMeansParams::new(k, seed), metric)?;
            params = json!({ "k": k, "seed": seed, "wcss": fit.wcss, "iterations": fit.assignment.iterations });
            title = format!("k-means, k = {k}");
            out.add(
                "summary.csv",
                cluster_summary(&data.points, &fit.assignment, Centers::Centroids(&fit.centroids), metric)?,
            );
            assignment = fit.assignment;
        }
        AlgoArg::Kmedoids => {
            let fit = kmedoids(&data.points, &KMedoidsParams::new(k, seed), metric)?;
            params = json!({ "k": k, "cost": fit.cost, "swaps": fit.assignment.iterations });
            title = format!("k-medoids, k = {k}");
            out.add(
                "summary.csv",
                cluster_summary(&data.points, &fit.assignment, Centers::Medoids(&fit.medoids), metric)?,
            );
            assignment = fit.assignment;
        }
        AlgoArg::Dbscan => {
            let eps = required(p.eps_km.or(data.default_eps()), "--eps-km", algo)?;
            let db = DbscanParams::new(eps, min_pts);
            db.validate()?;
            let index = SpatialIndex::build_for_radius(&data.points, metric, eps)?;
            assignment = dbscan(&index, &db)?;
            params = json!({ "eps": eps, "min_pts": min_pts });
            title = format!("DBSCAN, eps = {eps} {}, min_pts = {min_pts}", unit(metric));
            out.add("summary.csv", cluster_summary(&data.points, &assignment, Centers::Mean, metric)?);
        }
        AlgoArg::Optics => {
            let max_eps = p.max_eps_km.unwrap_or(f64::INFINITY);
            let eps_cut = required(p.eps_cut_km.or(data.default_eps()), "--eps-cut-km", algo)?;
            let index = SpatialIndex::build(&data.points, metric)?;
            let plot = optics(&index, &OpticsParams::new(max_eps, min_pts))?;
            assignment = extract_dbscan_clustering(&plot, eps_cut)?;
            params = json!({
                "max_eps": if max_eps.is_finite() { json!(max_eps) } else { json!("unbounded") },
                "min_pts": min_pts,
                "eps_cut": eps_cut,
            });
            title = format!("OPTICS, eps' = {eps_cut} {}, min_pts = {min_pts}", unit(metric));
            out.add("summary.csv", cluster_summary(&data.points, &assignment, Centers::Mean, metric)?);
            out.add("reachability.csv", reachability_csv(&plot, &data.cases, &assignment.labels)?);
            out.add(
                "reachability.svg",
                svg::reachability(&plot, &assignment.labels, eps_cut, unit(metric), &format!("Reachability, {title}")),
            );
        }
    }
    out.add("clusters.geojson", to_geojson_string(&data.cases, Some(&assignment.labels))?);
    out.add("scatter.svg", svg::scatter(&data.points, &assignment.labels, &title)?);

    let manifest = RunManifest {
        generator: GENERATOR,
        command: "cluster",
        input: data.source,
        algorithm: Some(algo.name().to_string()),
        params,
        metric: Some(metric),
        seed: matches!(algo, AlgoArg::Kmeans).then_some(seed),
        out_dir: String::new(),
        artifacts: Vec::new(),
    };
    let written = out.commit(manifest)?;
    Ok(Done {
        headline: format!(
            "{}: {} clusters, {} noise of {} cases",
            algo.name(),
            assignment.num_clusters,
            assignment.noise_count(),
            assignment.len()
        ),
        warnings: Vec::new(),
        written,
    })
}
