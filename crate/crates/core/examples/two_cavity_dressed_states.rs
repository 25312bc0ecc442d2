// SPDX-License-Identifier: Apache-2.0

//! Dressed levels of two coupled cavities: closed forms against the Jacobi
//! oracle for one and two excitations.

use collective_cavities::hamiltonian::TopologyKind;
use collective_cavities::spectra::{
    analytic_two_cavity_one_exc, collective_block, compare, diagonalize,
    single_excitation_block, two_cavity_two_exc_eigenvalues, ComparisonReport,
};
use collective_cavities::{GroupKind, Phase, Result, SystemParams};

pub fn run_example() -> Result<(ComparisonReport, Vec<f64>, [f64; 5])> {
    let (g, chi) = (1.0, 0.5);
    let block = single_excitation_block(2, g, chi, Phase::Symmetric)?;
    let levels = analytic_two_cavity_one_exc(g, chi, Phase::Symmetric)?;
    let one = compare(&levels, &diagonalize(&block)?)?;

    let params = SystemParams::new(2, 2, g, chi)?;
    let two = diagonalize(&collective_block(&params, 2, GroupKind::Dihedral, TopologyKind::Ring)?)?;
    let formula = two_cavity_two_exc_eigenvalues(g, chi, Phase::Symmetric)?;
    Ok((one, two.eigenvalues().to_vec(), formula))
}

fn main() -> Result<()> {
    let (one, oracle, formula) = run_example()?;
    println!("one excitation, g = 1, chi = 0.5");
    for (a, o) in one.analytic.iter().zip(&one.oracle) {
        println!("  closed form {a:>12.8}   oracle {o:>12.8}");
    }
    println!("two excitations");
    for (f, o) in formula.iter().zip(&oracle) {
        println!("  closed form {f:>12.8}   oracle {o:>12.8}");
    }
    Ok(())
}
