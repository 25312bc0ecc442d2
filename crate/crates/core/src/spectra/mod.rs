// SPDX-License-Identifier: Apache-2.0

//! Dressed-state spectra: the Jacobi oracle, closed-form levels and the
//! reports that set one against the other.

mod analytic;
mod jacobi;
mod report;

pub use analytic::{
    analytic_ring_one_exc, analytic_two_cavity_one_exc, analytic_two_cavity_two_exc,
    printed_ring_photonic_coefficient, two_cavity_two_exc_eigenvalues, DressedLevel,
    THREE_CAVITY_REFERENCE,
};
pub use jacobi::{diagonalize, Spectrum, DEGENERACY_GAP, RESIDUAL_TOL};
pub use report::{compare_values, ComparisonReport, Verdict};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::{interaction, restrict, HamiltonianMatrix, RingTopology, TopologyKind};
use crate::hilbert::{enumerate_basis, Phase, SystemParams};
use crate::symmetry::{collective_basis, GroupKind, SymmetryGroup};

/// Default agreement tolerance between formula and oracle eigenvalues.
pub const MATCH_TOL: f64 = 1e-10;

/// Compares formula levels with an oracle spectrum (sorted matching).
pub fn compare(analytic: &[DressedLevel], oracle: &Spectrum) -> Result<ComparisonReport> {
    let values: Vec<f64> = analytic.iter().map(|l| l.lambda).collect();
    compare_values(&values, oracle.eigenvalues(), MATCH_TOL)
}

/// `H_I` restricted to the collective basis of the `n_ex` manifold, in
/// canonical orbit order. The Fock cutoff is raised to `n_ex` if lower.
pub fn collective_block(
    params: &SystemParams,
    n_ex: u32,
    group: GroupKind,
    topology: TopologyKind,
) -> Result<HamiltonianMatrix> {
    let mut params = params.clone();
    params.fock_cutoff = params.fock_cutoff.max(n_ex);
    let basis = enumerate_basis(&params, n_ex)?;
    let h = interaction(&params, &RingTopology::new(topology, params.n_cavities)?, &basis)?;
    let group = SymmetryGroup::new(group, params.n_cavities)?;
    let states = collective_basis(&params, n_ex, &group, params.phi)?;
    restrict(&h, &states)
}

/// The single-excitation collective block ordered (atomic, photonic), the
/// order in which the closed-form coefficients are written.
pub fn single_excitation_block(
    n_cavities: usize,
    g: f64,
    chi: f64,
    phi: Phase,
) -> Result<HamiltonianMatrix> {
    let params = SystemParams::new(n_cavities, 1, g, chi)?.with_phase(phi);
    let group = SymmetryGroup::new(GroupKind::Dihedral, n_cavities)?;
    let basis = enumerate_basis(&params, 1)?;
    let h = interaction(&params, &RingTopology::ring(n_cavities)?, &basis)?;
    let mut states = collective_basis(&params, 1, &group, phi)?;
    if states.len() != 2 {
        return Err(Error::invalid(format!(
            "{n_cavities} cavities have {} single-excitation states for this phase",
            states.len()
        )));
    }
    // Canonical order lists the all-ground photonic state first.
    states.reverse();
    restrict(&h, &states)
}

/// Oracle spectrum of the three-cavity two-excitation block at `g = χ`
/// next to the tabulated reference values.
#[derive(Debug, Clone, Serialize)]
pub struct ThreeCavityReport {
    pub g: f64,
    /// Reference values scaled by `g`.
    pub reference: Vec<f64>,
    pub oracle: Vec<f64>,
    /// Trace of the restricted 5×5 block.
    pub trace: f64,
    /// `|Σλ − trace|`.
    pub trace_error: f64,
    pub comparison: ComparisonReport,
}

/// Reference values carry six significant figures.
pub const REFERENCE_TOL: f64 = 1e-5;

pub fn three_cavity_two_exc_report(g: f64) -> Result<ThreeCavityReport> {
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::invalid(format!("g = chi must be positive, got {g}")));
    }
    let params = SystemParams::new(3, 2, g, g)?;
    let block = collective_block(&params, 2, GroupKind::Dihedral, TopologyKind::Ring)?;
    let spectrum = diagonalize(&block)?;
    let oracle = spectrum.eigenvalues().to_vec();
    let reference: Vec<f64> = THREE_CAVITY_REFERENCE.iter().map(|v| v * g).collect();
    let trace = block.trace();
    let trace_error = (oracle.iter().sum::<f64>() - trace).abs();
    let comparison = compare_values(&reference, &oracle, REFERENCE_TOL * g)?;
    Ok(ThreeCavityReport {
        g,
        reference,
        oracle,
        trace,
        trace_error,
        comparison,
    })
}
