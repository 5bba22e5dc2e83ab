use clap::ArgMatches;
use epiclust::clustering::Label;
use epiclust::evaluation::{compare_algorithms, tehsil_breakdown, Algorithm, ComparisonParams, ComparisonReport};
use serde_json::json;

use super::{unit, Done};
use crate::cli::CompareArgs;
use crate::error::CliError;
use crate::input::Dataset;
use crate::output::{Output, RunManifest, GENERATOR};
use crate::svg::{self, Panel};

fn panel_title(report: &ComparisonReport, algorithm: Algorithm, params: &ComparisonParams, unit: &str) -> String {
    let setting = match algorithm {
        Algorithm::KMeans => format!("k = {}", params.kmeans.k),
        Algorithm::KMedoids => format!("k = {}", params.kmedoids.k),
        Algorithm::Dbscan => format!("eps = {} {unit}", params.dbscan.eps),
        Algorithm::Optics => format!("eps' = {} {unit}", params.eps_cut),
    };
    match report.run(algorithm).assignment() {
        Some(a) => format!(
            "{} ({setting}): {} clusters, {} noise",
            algorithm.name(),
            a.num_clusters,
            a.noise_count()
        ),
        None => format!("{} ({setting})", algorithm.name()),
    }
}

/// Per-case labels from every algorithm, `undefined` where a run failed.
fn labels_csv(data: &Dataset, report: &ComparisonReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id".to_string(), "tehsil".to_string()];
    header.extend(report.runs.iter().map(|r| r.algorithm.name().to_string()));
    w.write_record(&header).map_err(|e| CliError::Data(e.to_string()))?;
    for (i, case) in data.cases.iter().enumerate() {
        let mut row = vec![case.id.clone(), case.tehsil.clone()];
        row.extend(
            report
                .runs
                .iter()
                .map(|r| r.assignment().map_or("undefined".to_string(), |a| a.labels[i].to_string())),
        );
        w.write_record(&row).map_err(|e| CliError::Data(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Data(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn run(args: &CompareArgs, _matches: &ArgMatches) -> Result<Done, CliError> {
    let data = Dataset::load(&args.input)?;
    let p = &args.params;
    let metric = data.metric;
    let eps = p
        .eps_km
        .or(data.default_eps())
        .ok_or_else(|| CliError::Usage("--eps-km is required (the input records no default)".into()))?;
    let k = p.k.unwrap_or_else(|| data.default_k());
    let min_pts = p.min_pts.unwrap_or_else(|| data.default_min_pts());
    let seed = p.seed.or(data.seed).unwrap_or(0);
    let mut params = ComparisonParams::new(k, eps, min_pts, seed);
    if let Some(max_eps) = p.max_eps_km {
        params.optics.max_eps = max_eps;
    }
    if let Some(cut) = p.eps_cut_km {
        params.eps_cut = cut;
    }

    let report = compare_algorithms(&data.cases, &params, metric)?;
    let warnings: Vec<String> = report
        .runs
        .iter()
        .filter_map(|r| r.outcome.as_ref().err().map(|e| format!("{} failed: {e}", r.algorithm.name())))
        .collect();

    let u = unit(metric);
    let titles: Vec<String> = Algorithm::ALL.iter().map(|&a| panel_title(&report, a, &params, u)).collect();
    let cells: Vec<Panel<'_>> = report
        .runs
        .iter()
        .zip(titles)
        .map(|(run, title)| Panel {
            title,
            outcome: run
                .outcome
                .as_ref()
                .map(|(a, _)| a.labels.as_slice() as &[Label])
                .map_err(Clone::clone),
        })
        .collect();

    let mut out = Output::new(&args.input.out);
    out.add("comparison.csv", report.to_csv()?);
    out.add("labels.csv", labels_csv(&data, &report)?);
    out.add("tehsil_breakdown.csv", tehsil_breakdown(&data.cases).to_csv()?);
    out.add("panels.svg", svg::panels(&data.points, &cells)?);

    let manifest = RunManifest {
        generator: GENERATOR,
        command: "compare",
        input: data.source,
        algorithm: Some("all".to_string()),
        params: json!({
            "k": k,
            "eps": eps,
            "min_pts": min_pts,
            "max_eps": if params.optics.max_eps.is_finite() { json!(params.optics.max_eps) } else { json!("unbounded") },
            "eps_cut": params.eps_cut,
        }),
        metric: Some(metric),
        seed: Some(seed),
        out_dir: String::new(),
        artifacts: Vec::new(),
    };
    let written = out.commit(manifest)?;
    Ok(Done {
        headline: format!(
            "compared 4 algorithms on {} cases ({} failed)",
            data.cases.len(),
            warnings.len()
        ),
        warnings,
        written,
    })
}
