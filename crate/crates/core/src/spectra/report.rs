// SPDX-License-Identifier: Apache-2.0

//! Sorted level-by-level comparison between formula values and the oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    DocumentedDeviation,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub analytic: Vec<f64>,
    pub oracle: Vec<f64>,
    pub deviations: Vec<f64>,
    pub verdicts: Vec<Verdict>,
    pub tolerance: f64,
}

impl ComparisonReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().copied().fold(0.0, f64::max)
    }

    pub fn all_match(&self) -> bool {
        self.verdicts.iter().all(|v| *v == Verdict::Match)
    }

    pub fn len(&self) -> usize {
        self.deviations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deviations.is_empty()
    }
}

/// Sorts both lists ascending and compares them position by position.
pub fn compare_values(analytic: &[f64], oracle: &[f64], tolerance: f64) -> Result<ComparisonReport> {
    if analytic.len() != oracle.len() {
        return Err(Error::invalid(format!(
            "cannot compare {} formula values with {} oracle values",
            analytic.len(),
            oracle.len()
        )));
    }
    let mut analytic = analytic.to_vec();
    let mut oracle = oracle.to_vec();
    analytic.sort_by(f64::total_cmp);
    oracle.sort_by(f64::total_cmp);
    let deviations: Vec<f64> = analytic
        .iter()
        .zip(&oracle)
        .map(|(a, o)| (a - o).abs())
        .collect();
    let verdicts = deviations
        .iter()
        .map(|&d| {
            if d <= tolerance {
                Verdict::Match
            } else {
                Verdict::Mismatch
            }
        })
        .collect();
    Ok(ComparisonReport {
        analytic,
        oracle,
        deviations,
        verdicts,
        tolerance,
    })
}
