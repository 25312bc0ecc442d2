// SPDX-License-Identifier: Apache-2.0

//! Two excitations on a ring of three cavities at g = chi, next to the
//! tabulated reference levels.

use collective_cavities::spectra::{three_cavity_two_exc_report, ThreeCavityReport};
use collective_cavities::Result;

pub fn run_example() -> Result<ThreeCavityReport> {
    three_cavity_two_exc_report(1.0)
}

fn main() -> Result<()> {
    let report = run_example()?;
    println!("{:>12} {:>14} {:>10}", "reference", "oracle", "verdict");
    for k in 0..report.oracle.len() {
        println!(
            "{:>12.6} {:>14.8} {:>10?}",
            report.reference[k], report.oracle[k], report.comparison.verdicts[k]
        );
    }
    println!("trace {} (error {:e})", report.trace, report.trace_error);
    Ok(())
}
