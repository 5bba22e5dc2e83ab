pub mod cluster;
pub mod compare;
pub mod sweep;
pub mod synth;

use clap::parser::ValueSource;
use clap::ArgMatches;
use epiclust::geo::DistanceMetric;

/// True when `id` was typed on the command line (not defaulted or taken
/// from the environment).
pub fn given(matches: &ArgMatches, id: &str) -> bool {
    matches.value_source(id) == Some(ValueSource::CommandLine)
}

/// Distance unit for labels and messages.
pub fn unit(metric: DistanceMetric) -> &'static str {
    match metric {
        DistanceMetric::Euclidean => "deg",
        _ => "km",
    }
}

/// Report printed on success.
pub struct Done {
    pub headline: String,
    pub warnings: Vec<String>,
    pub written: Vec<std::path::PathBuf>,
}
