// SPDX-License-Identifier: Apache-2.0

//! Decay of the upper dressed state with nutation of the coherence,
//! p = 1 and q = 3, written as CSV to stdout every 0.5 in tau.

use collective_cavities::dynamics::{closed_form_moments, integrate_moments, MomentState, TimeSeries};
use collective_cavities::Result;

pub fn run_example() -> Result<(TimeSeries, f64)> {
    let s0 = MomentState::new(1.0, 0.0, 0.0, 0.0);
    let series = integrate_moments(s0, 1.0, 3.0, 10.0, 1e-3)?;
    let worst = series
        .rows()
        .iter()
        .map(|r| r.state.max_abs_diff(&closed_form_moments(s0, 1.0, 3.0, r.tau)))
        .fold(0.0, f64::max);
    Ok((series, worst))
}

fn main() -> Result<()> {
    let (series, worst) = run_example()?;
    let csv = series.to_csv();
    let mut lines = csv.lines();
    println!("{}", lines.next().unwrap_or_default());
    for line in lines.step_by(500) {
        println!("{line}");
    }
    eprintln!("max deviation from the exact solution: {worst:e}");
    Ok(())
}
