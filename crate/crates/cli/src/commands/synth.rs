use clap::ArgMatches;
use epiclust::ingestion::{generate_synthetic, to_geojson_string, two_density_dataset, write_csv_to, SynthConfig};
use serde_json::json;

use super::{given, Done};
use crate::cli::{Preset, SynthArgs};
use crate::error::CliError;
use crate::output::{Output, RunManifest, GENERATOR};

pub fn run(args: &SynthArgs, matches: &ArgMatches) -> Result<Done, CliError> {
    let mut out = Output::new(&args.out);
    let (input, config) = match (&args.config, args.preset) {
        (Some(path), _) => (path.display().to_string(), Some(SynthConfig::from_path(path)?)),
        (None, Some(Preset::TwoDensity)) => ("preset two-density".to_string(), None),
        (None, Some(Preset::Villages)) => ("preset villages".to_string(), Some(SynthConfig::villages_default())),
        (None, Some(Preset::District) | None) => ("preset district".to_string(), Some(SynthConfig::district_default())),
    };
    let (records, config) = match config {
        Some(mut config) => {
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            (generate_synthetic(&config)?, Some(config))
        }
        None => {
            if given(matches, "seed") {
                return Err(CliError::Usage("--seed does not apply to the two-density preset".into()));
            }
            (two_density_dataset(), None)
        }
    };

    let mut csv = Vec::new();
    write_csv_to(&records, &mut csv)?;
    out.add("cases.csv", csv);
    out.add("cases.geojson", to_geojson_string(&records, None)?);
    if let Some(config) = &config {
        out.add("config.toml", config.to_toml_string()?);
    }
    let manifest = RunManifest {
        generator: GENERATOR,
        command: "synth",
        input,
        algorithm: None,
        params: json!({ "records": records.len() }),
        metric: None,
        seed: config.as_ref().map(|c| c.seed),
        out_dir: String::new(),
        artifacts: Vec::new(),
    };
    let written = out.commit(manifest)?;
    Ok(Done {
        headline: format!("generated {} cases", records.len()),
        warnings: Vec::new(),
        written,
    })
}
