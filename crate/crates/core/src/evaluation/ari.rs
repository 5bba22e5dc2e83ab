use std::collections::HashMap;

use crate::clustering::Label;
use crate::error::{Error, Result};

/// How NOISE labels enter the adjusted Rand index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseHandling {
    /// NOISE is one ordinary label value; all noise points form one group.
    #[default]
    AsLabel,
    /// Points that are NOISE in either labelling are dropped first.
    Exclude,
}

/// Adjusted Rand index with NOISE treated as an ordinary label.
pub fn adjusted_rand_index(a: &[Label], b: &[Label]) -> Result<f64> {
    adjusted_rand_index_with(a, b, NoiseHandling::AsLabel)
}

/// Adjusted Rand index from the pair-counting contingency table.
///
/// Returns 1.0 when both partitions are trivial in the same way (all in one
/// group, or all singletons), where the chance-corrected form is 0/0.
pub fn adjusted_rand_index_with(a: &[Label], b: &[Label], noise: NoiseHandling) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "label vectors differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let pairs: Vec<(Label, Label)> = a
        .iter()
        .zip(b)
        .filter(|(x, y)| noise == NoiseHandling::AsLabel || !(x.is_noise() || y.is_noise()))
        .map(|(&x, &y)| (x, y))
        .collect();
    let n = pairs.len() as u64;

    let mut cells: HashMap<(Label, Label), u64> = HashMap::new();
    let mut rows: HashMap<Label, u64> = HashMap::new();
    let mut cols: HashMap<Label, u64> = HashMap::new();
    for &(x, y) in &pairs {
        *cells.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    let comb2 = |m: u64| (m * m.saturating_sub(1) / 2) as f64;
    let index: f64 = cells.values().map(|&m| comb2(m)).sum();
    let sum_rows: f64 = rows.values().map(|&m| comb2(m)).sum();
    let sum_cols: f64 = cols.values().map(|&m| comb2(m)).sum();
    let total = comb2(n);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = sum_rows * sum_cols / total;
    let max = (sum_rows + sum_cols) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}
