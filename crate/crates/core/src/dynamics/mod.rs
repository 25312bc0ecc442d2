// SPDX-License-Identifier: Apache-2.0

//! Damped dynamics of one collective excitation shared by two coupled
//! cavities.
//!
//! The excited manifold is spanned by the dressed states `|1,1>` and
//! `|1,-1>` (energies `ω̃ ± λ₁`) which both decay to the ground state `|0>`
//! through the cavity photons. The moment equations for
//! `x = <U_{1,1}^{1,1}>`, `y = <U_{1,-1}^{1,-1}>` and the coherence
//! `ρ_{+-} = u − i w` are integrated with RK4 in the dimensionless time
//! `τ = t / τ₁`, `1/τ₁ = 2γc₁²`. An exact matrix-exponential solution and a
//! density-matrix generator serve as independent checks.

mod density;
mod expm;
mod generator;
mod moments;
mod params;
mod series;

pub use density::{entropy, excited_eigenvalues, reconstruct_density, DensityMatrix3, ENTROPY_CLAMP};
pub use expm::expm4;
pub use generator::{
    evolve_density, generator_consistency, moment_coefficients, CoefficientEntry,
    ConsistencyTable, DecayGenerator, GeneratorForm, MOMENT_NAMES,
};
pub use moments::{
    closed_form_moments, closed_form_series, integrate_moments, moment_matrix, moment_rhs,
    MomentState,
};
pub use params::DynamicsParams;
pub use series::{TimeRow, TimeSeries, CSV_HEADER};

use crate::error::{Error, Result};

/// Number of fixed steps covering `[0, end]`; `end` must be a whole multiple
/// of `dt` to 1e-9 relative.
pub(crate) fn step_count(end: f64, dt: f64) -> Result<usize> {
    check_time_grid(end, dt)?;
    Ok((end / dt).round() as usize)
}

/// Accepts `end > 0` that is a whole multiple of `dt > 0`.
pub fn check_time_grid(end: f64, dt: f64) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid(format!("dt must be positive, got {dt}")));
    }
    if !(end > 0.0 && end.is_finite()) {
        return Err(Error::invalid(format!("end time must be positive, got {end}")));
    }
    let steps = (end / dt).round();
    if steps < 1.0 || (steps * dt - end).abs() > 1e-9 * end {
        return Err(Error::invalid(format!(
            "end time {end} is not a whole number of steps of {dt}"
        )));
    }
    Ok(())
}

/// One classical fourth-order Runge–Kutta step.
pub(crate) fn rk4_step<S, F>(f: &F, y: &S, h: f64) -> S
where
    S: Clone + std::ops::Add<Output = S> + std::ops::Mul<f64, Output = S>,
    F: Fn(&S) -> S,
{
    let k1 = f(y);
    let k2 = f(&(y.clone() + k1.clone() * (h / 2.0)));
    let k3 = f(&(y.clone() + k2.clone() * (h / 2.0)));
    let k4 = f(&(y.clone() + k3.clone() * h));
    y.clone() + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}
