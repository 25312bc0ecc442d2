// SPDX-License-Identifier: Apache-2.0

//! Counts collective states per excitation manifold and checks the orbit
//! enumeration against Burnside's lemma.

use collective_cavities::hilbert::{enumerate_basis, SystemParams};
use collective_cavities::symmetry::{burnside_count, orbits, GroupKind, SymmetryGroup};
use collective_cavities::Result;

pub fn run_example() -> Result<Vec<(usize, u32, usize, usize)>> {
    let mut table = Vec::new();
    for n in 2..=3 {
        for n_ex in 1..=3 {
            let params = SystemParams::new(n, n_ex, 1.0, 1.0)?;
            let basis = enumerate_basis(&params, n_ex)?;
            let found = orbits(&basis, &SymmetryGroup::new(GroupKind::Dihedral, n)?)?;
            assert_eq!(found.len(), burnside_count(n, n_ex, n_ex, GroupKind::Dihedral)?);
            table.push((n, n_ex, basis.len(), found.len()));
        }
    }
    Ok(table)
}

fn main() -> Result<()> {
    println!("cavities excitations distinguishable collective");
    for (n, n_ex, distinct, collective) in run_example()? {
        println!("{n:>8} {n_ex:>11} {distinct:>15} {collective:>10}");
    }
    Ok(())
}
