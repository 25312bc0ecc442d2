// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::density::entropy;
use super::moments::MomentState;
use crate::error::{Error, Result};
use crate::format::sig12;

pub const CSV_HEADER: &str = "tau,x,y,u,w,S,ground";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeRow {
    pub tau: f64,
    #[serde(flatten)]
    pub state: MomentState,
    #[serde(rename = "S")]
    pub entropy: f64,
    pub ground: f64,
}

impl TimeRow {
    pub fn new(tau: f64, state: MomentState) -> Result<Self> {
        Ok(TimeRow {
            tau,
            state,
            entropy: entropy(&state)?,
            ground: state.ground(),
        })
    }

    fn values(&self) -> [f64; 7] {
        let s = self.state;
        [self.tau, s.x, s.y, s.u, s.w, self.entropy, self.ground]
    }
}

/// Rows on a fixed, strictly increasing `τ` grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct TimeSeries {
    rows: Vec<TimeRow>,
}

impl TimeSeries {
    pub fn new(rows: Vec<TimeRow>) -> Self {
        TimeSeries { rows }
    }

    pub fn rows(&self) -> &[TimeRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn first(&self) -> &TimeRow {
        &self.rows[0]
    }

    pub fn last(&self) -> &TimeRow {
        self.rows.last().expect("series has at least one row")
    }

    /// Header plus one line per row, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.values().iter().map(|&v| sig12(v)).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the output of [`TimeSeries::to_csv`]. Entropy and ground
    /// columns are read as written, not recomputed.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(CSV_HEADER) {
            return Err(Error::invalid(format!("expected header {CSV_HEADER:?}")));
        }
        let mut rows = Vec::new();
        for (n, line) in lines.enumerate() {
            let values: Vec<f64> = line
                .split(',')
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::invalid(format!("line {}: {e}", n + 2)))?;
            if values.len() != 7 {
                return Err(Error::invalid(format!(
                    "line {}: expected 7 fields, got {}",
                    n + 2,
                    values.len()
                )));
            }
            rows.push(TimeRow {
                tau: values[0],
                state: MomentState::new(values[1], values[2], values[3], values[4]),
                entropy: values[5],
                ground: values[6],
            });
        }
        Ok(TimeSeries { rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_row_echoes_initial_state() {
        let row = TimeRow::new(0.0, MomentState::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        let csv = TimeSeries::new(vec![row]).to_csv();
        assert_eq!(csv, "tau,x,y,u,w,S,ground\n0,1,0,0,0,0,0\n");
    }

    #[test]
    fn bad_csv_rejected() {
        assert!(TimeSeries::from_csv("t,x\n").is_err());
        assert!(TimeSeries::from_csv("tau,x,y,u,w,S,ground\n1,2\n").is_err());
        assert!(TimeSeries::from_csv("tau,x,y,u,w,S,ground\n1,2,a,4,5,6,7\n").is_err());
    }
}
