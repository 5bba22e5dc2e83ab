use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

pub const GENERATOR: &str = concat!("epiclust ", env!("CARGO_PKG_VERSION"));

/// What a run did and which files it left behind. Written as
/// `manifest.json` next to the artifacts.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub generator: &'static str,
    pub command: &'static str,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    pub params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<epiclust::geo::DistanceMetric>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub out_dir: String,
    pub artifacts: Vec<String>,
}

/// Artifacts collected in memory and written together, so a failing run
/// leaves nothing half-written.
pub struct Output {
    dir: PathBuf,
    files: Vec<(String, Vec<u8>)>,
}

impl Output {
    pub fn new(dir: &Path) -> Self {
        Output {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        }
    }

    pub fn add(&mut self, name: &str, contents: impl Into<Vec<u8>>) {
        self.files.push((name.to_string(), contents.into()));
    }

    /// Writes every artifact, then the manifest listing them.
    pub fn commit(self, mut manifest: RunManifest) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        manifest.out_dir = self.dir.display().to_string();
        manifest.artifacts = self.files.iter().map(|(name, _)| name.clone()).collect();
        let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        json.push('\n');

        let mut written = Vec::new();
        for (name, contents) in self.files.iter().map(|(n, c)| (n.as_str(), c.as_slice())).chain([("manifest.json", json.as_bytes())]) {
            written.push(write_atomic(&self.dir, name, contents)?);
        }
        Ok(written)
    }
}

/// Writes to a hidden sibling first and renames it into place.
fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let partial = dir.join(format!(".{name}.partial"));
    let result = fs::File::create(&partial)
        .and_then(|mut f| f.write_all(contents).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&partial, &path));
    if let Err(e) = result {
        let _ = fs::remove_file(&partial);
        return Err(CliError::io(&path, e));
    }
    Ok(path)
}
