use clap::ArgMatches;
use epiclust::clustering::DbscanParams;
use epiclust::evaluation::{float_grid, sensitivity_sweep};
use epiclust::geo::SpatialIndex;
use serde_json::json;

use super::{unit, Done};
use crate::cli::SweepArgs;
use crate::error::CliError;
use crate::input::Dataset;
use crate::output::{Output, RunManifest, GENERATOR};
use crate::svg;

fn bad_grid(flag: &str, text: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{flag} `{text}`: {why}"))
}

/// `start:stop:step` (inclusive) or a comma-separated list.
pub fn parse_eps_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let flag = "--eps-grid";
    let grid = if text.contains(':') {
        let parts: Vec<f64> = text
            .split(':')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad_grid(flag, text, e))?;
        let [start, stop, step] = parts[..] else {
            return Err(bad_grid(flag, text, "expected start:stop:step"));
        };
        float_grid(start, stop, step).map_err(|e| bad_grid(flag, text, e))?
    } else {
        text.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad_grid(flag, text, e))?
    };
    if grid.is_empty() {
        return Err(bad_grid(flag, text, "grid is empty"));
    }
    Ok(grid)
}

/// `start:stop:step` (inclusive) or a comma-separated list.
pub fn parse_min_pts_grid(text: &str) -> Result<Vec<usize>, CliError> {
    let flag = "--min-pts-grid";
    let grid: Vec<usize> = if text.contains(':') {
        let parts: Vec<usize> = text
            .split(':')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad_grid(flag, text, e))?;
        let [start, stop, step] = parts[..] else {
            return Err(bad_grid(flag, text, "expected start:stop:step"));
        };
        if step == 0 {
            return Err(bad_grid(flag, text, "step must be positive"));
        }
        (start..=stop).step_by(step).collect()
    } else {
        text.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad_grid(flag, text, e))?
    };
    if grid.is_empty() {
        return Err(bad_grid(flag, text, "grid is empty"));
    }
    Ok(grid)
}

pub fn run(args: &SweepArgs, _matches: &ArgMatches) -> Result<Done, CliError> {
    let eps_grid = parse_eps_grid(&args.eps_grid)?;
    let data = Dataset::load(&args.input)?;
    let min_pts = args.min_pts.unwrap_or_else(|| data.default_min_pts());
    let min_pts_grid = match &args.min_pts_grid {
        Some(text) => parse_min_pts_grid(text)?,
        None => vec![min_pts],
    };
    let eps = args
        .eps_km
        .or(data.default_eps())
        .ok_or_else(|| CliError::Usage("--eps-km (the baseline) is required; the input records no default".into()))?;
    let base = DbscanParams::new(eps, min_pts);
    base.validate()?;

    let index = SpatialIndex::build(&data.points, data.metric)?;
    let result = sensitivity_sweep(&index, base, &eps_grid, &min_pts_grid)?;
    let warnings: Vec<String> = result
        .rows
        .iter()
        .filter_map(|r| {
            r.outcome
                .as_ref()
                .err()
                .map(|e| format!("eps {} min_pts {}: {e}", r.eps, r.min_pts))
        })
        .collect();

    let u = unit(data.metric);
    let mut out = Output::new(&args.input.out);
    out.add("sweep.csv", result.to_csv()?);
    out.add(
        "sweep.svg",
        svg::sweep_chart(&result, u, &format!("DBSCAN sensitivity (baseline eps = {eps} {u}, min_pts = {min_pts})")),
    );
    let manifest = RunManifest {
        generator: GENERATOR,
        command: "sweep",
        input: data.source,
        algorithm: Some("dbscan".to_string()),
        params: json!({
            "baseline": { "eps": eps, "min_pts": min_pts },
            "eps_grid": eps_grid,
            "min_pts_grid": min_pts_grid,
        }),
        metric: Some(data.metric),
        seed: None,
        out_dir: String::new(),
        artifacts: Vec::new(),
    };
    let written = out.commit(manifest)?;
    Ok(Done {
        headline: format!("swept {} grid points", result.rows.len()),
        warnings,
        written,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_grid_forms() {
        assert_eq!(parse_eps_grid("0.5:1.5:0.5").unwrap(), vec![0.5, 1.0, 1.5]);
        assert_eq!(parse_eps_grid("1, 2.5").unwrap(), vec![1.0, 2.5]);
        assert_eq!(parse_eps_grid("2:2:1").unwrap(), vec![2.0]);
        for bad in ["", ",", "1:0:1", "1:2", "a:b:c", "1:2:0"] {
            assert!(matches!(parse_eps_grid(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn min_pts_grid_forms() {
        assert_eq!(parse_min_pts_grid("3:7:2").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_min_pts_grid("4").unwrap(), vec![4]);
        for bad in ["", "5:3:1", "3:4:0", "x"] {
            assert!(parse_min_pts_grid(bad).is_err(), "{bad}");
        }
    }
}
