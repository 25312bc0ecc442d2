// SPDX-License-Identifier: Apache-2.0

//! Moment equations read off the density-matrix generator, coefficient by
//! coefficient, against the moment system.

use collective_cavities::dynamics::{generator_consistency, ConsistencyTable, DynamicsParams, GeneratorForm};
use collective_cavities::Result;

pub fn run_example() -> Result<ConsistencyTable> {
    let params = DynamicsParams::derive(1.0, 1.0, 0.5, 0.0)?;
    generator_consistency(&params, GeneratorForm::StandardLindblad, 1e-8)
}

fn main() -> Result<()> {
    let table = run_example()?;
    println!("p = {:.6}, q = {:.6}", table.p, table.q);
    for e in &table.entries {
        let mark = if e.agrees { "" } else { "  <- differs" };
        println!(
            "d{}/d{}: generator {:>10.6}  moment system {:>10.6}{mark}",
            e.row, e.column, e.generator, e.moment_system
        );
    }
    Ok(())
}
