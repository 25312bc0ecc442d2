// SPDX-License-Identifier: Apache-2.0

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use super::expm::expm4;
use super::series::{TimeRow, TimeSeries};
use super::{rk4_step, step_count};
use crate::error::{Error, Result};

/// Populations `x`, `y` of `|1,1>`, `|1,-1>` and the coherence
/// `<|1,-1><1,1|> = u − i w`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MomentState {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub w: f64,
}

impl MomentState {
    pub const fn new(x: f64, y: f64, u: f64, w: f64) -> Self {
        MomentState { x, y, u, w }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.u, self.w]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        MomentState::new(a[0], a[1], a[2], a[3])
    }

    /// `<U_0^0> = 1 − x − y`.
    pub fn ground(&self) -> f64 {
        1.0 - self.x - self.y
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    pub fn max_abs_diff(&self, other: &MomentState) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Populations non-negative and summing to at most one.
    pub fn validate(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::invalid("moment state has non-finite entries"));
        }
        if self.x < 0.0 || self.y < 0.0 || self.x + self.y > 1.0 + 1e-9 {
            return Err(Error::invalid(format!(
                "populations x = {}, y = {} must be >= 0 with x + y <= 1",
                self.x, self.y
            )));
        }
        Ok(())
    }
}

impl Add for MomentState {
    type Output = MomentState;

    fn add(self, o: MomentState) -> MomentState {
        MomentState::new(self.x + o.x, self.y + o.y, self.u + o.u, self.w + o.w)
    }
}

impl Mul<f64> for MomentState {
    type Output = MomentState;

    fn mul(self, k: f64) -> MomentState {
        MomentState::new(self.x * k, self.y * k, self.u * k, self.w * k)
    }
}

/// Right-hand side of the moment equations in `τ`:
///
/// ```text
/// dx/dτ = −x − p u
/// dy/dτ = −p² y − p u
/// du/dτ = −2q w − (p² + 1) u − (p/2)(x + y)
/// dw/dτ =  2q u − (p² + 1) w
/// ```
pub fn moment_rhs(s: &MomentState, p: f64, q: f64) -> MomentState {
    let p2 = p * p;
    MomentState {
        x: -s.x - p * s.u,
        y: -p2 * s.y - p * s.u,
        u: -2.0 * q * s.w - (p2 + 1.0) * s.u - 0.5 * p * (s.x + s.y),
        w: 2.0 * q * s.u - (p2 + 1.0) * s.w,
    }
}

/// Coefficient matrix `A` of `d(x, y, u, w)/dτ = A (x, y, u, w)`.
pub fn moment_matrix(p: f64, q: f64) -> [[f64; 4]; 4] {
    let d = -(p * p + 1.0);
    [
        [-1.0, 0.0, -p, 0.0],
        [0.0, -p * p, -p, 0.0],
        [-0.5 * p, -0.5 * p, d, -2.0 * q],
        [0.0, 0.0, 2.0 * q, d],
    ]
}

fn check_ratios(p: f64, q: f64) -> Result<()> {
    if !p.is_finite() || !q.is_finite() {
        return Err(Error::invalid(format!("p = {p} and q = {q} must be finite")));
    }
    Ok(())
}

/// Fixed-step RK4 from `τ = 0` to `tau_end`, one row per step including both
/// ends. Every row carries the entropy and the ground population.
pub fn integrate_moments(
    s0: MomentState,
    p: f64,
    q: f64,
    tau_end: f64,
    dt: f64,
) -> Result<TimeSeries> {
    check_ratios(p, q)?;
    s0.validate()?;
    let steps = step_count(tau_end, dt)?;
    let rhs = |s: &MomentState| moment_rhs(s, p, q);
    let mut rows = Vec::with_capacity(steps + 1);
    let mut state = s0;
    rows.push(TimeRow::new(0.0, state)?);
    for k in 1..=steps {
        state = rk4_step(&rhs, &state, dt);
        if !state.is_finite() {
            return Err(Error::Divergence { step: k });
        }
        let tau = if k == steps { tau_end } else { k as f64 * dt };
        rows.push(TimeRow::new(tau, state)?);
    }
    Ok(TimeSeries::new(rows))
}

/// Exact solution `exp(A τ) s0` of the (linear, constant-coefficient)
/// moment equations.
pub fn closed_form_moments(s0: MomentState, p: f64, q: f64, tau: f64) -> MomentState {
    let m = moment_matrix(p, q);
    let scaled = m.map(|row| row.map(|v| v * tau));
    let e = expm4(&scaled);
    let s = s0.to_array();
    MomentState::from_array(std::array::from_fn(|i| (0..4).map(|j| e[i][j] * s[j]).sum()))
}

/// Closed-form states on the same grid `integrate_moments` uses: the exact
/// one-step propagator `exp(A dt)` applied repeatedly, with the final row
/// evaluated directly at `tau_end`.
pub fn closed_form_series(
    s0: MomentState,
    p: f64,
    q: f64,
    tau_end: f64,
    dt: f64,
) -> Result<Vec<(f64, MomentState)>> {
    check_ratios(p, q)?;
    let steps = step_count(tau_end, dt)?;
    let step = expm4(&moment_matrix(p, q).map(|row| row.map(|v| v * dt)));
    let mut out = Vec::with_capacity(steps + 1);
    let mut s = s0.to_array();
    out.push((0.0, s0));
    for k in 1..steps {
        s = std::array::from_fn(|i| (0..4).map(|j| step[i][j] * s[j]).sum());
        out.push((k as f64 * dt, MomentState::from_array(s)));
    }
    out.push((tau_end, closed_form_moments(s0, p, q, tau_end)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_examples() {
        let d = moment_rhs(&MomentState::new(1.0, 0.0, 0.0, 0.0), 1.0, 3.0);
        assert_eq!(d, MomentState::new(-1.0, 0.0, -0.5, 0.0));
        let d = moment_rhs(&MomentState::default(), 0.7, 2.0);
        assert_eq!(d, MomentState::default());
        let d = moment_rhs(&MomentState::new(0.0, 1.0, 0.0, 0.0), 2.0, 1.0);
        assert_eq!(d, MomentState::new(0.0, -4.0, -1.0, 0.0));
    }

    #[test]
    fn matrix_matches_rhs() {
        let s = MomentState::new(0.3, 0.2, -0.1, 0.05);
        for (p, q) in [(0.0, 0.0), (0.5, 3.0), (1.0, 1.5)] {
            let m = moment_matrix(p, q);
            let a = s.to_array();
            let via_matrix = MomentState::from_array(std::array::from_fn(|i| {
                (0..4).map(|j| m[i][j] * a[j]).sum()
            }));
            assert!(via_matrix.max_abs_diff(&moment_rhs(&s, p, q)) < 1e-15);
        }
    }

    #[test]
    fn closed_form_initial_and_decoupled() {
        let s0 = MomentState::new(0.6, 0.3, 0.1, -0.2);
        assert!(closed_form_moments(s0, 0.8, 3.0, 0.0).max_abs_diff(&s0) == 0.0);
        for tau in [0.5, 2.0, 7.0] {
            let s = closed_form_moments(MomentState::new(0.7, 0.2, 0.0, 0.0), 0.0, 3.0, tau);
            assert!((s.x - 0.7 * (-tau).exp()).abs() < 1e-14);
            assert!((s.y - 0.2).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_matches_fine_integration() {
        let s0 = MomentState::new(1.0, 0.0, 0.0, 0.0);
        let exact = closed_form_moments(s0, 1.0, 0.0, 1.0);
        let fine = integrate_moments(s0, 1.0, 0.0, 1.0, 1e-6).unwrap();
        assert!(fine.last().state.max_abs_diff(&exact) < 1e-10);
    }

    #[test]
    fn series_matches_pointwise_exponential() {
        let s0 = MomentState::new(0.5, 0.5, 0.0, 0.0);
        let series = closed_form_series(s0, 0.5, 3.0, 5.0, 0.01).unwrap();
        assert_eq!(series.len(), 501);
        for (tau, s) in series.iter().step_by(50) {
            assert!(s.max_abs_diff(&closed_form_moments(s0, 0.5, 3.0, *tau)) < 1e-13);
        }
    }

    #[test]
    fn zero_state_stays_zero() {
        let series = integrate_moments(MomentState::default(), 1.0, 3.0, 2.0, 0.01).unwrap();
        assert!(series.rows().iter().all(|r| r.state == MomentState::default()));
        assert_eq!(series.len(), 201);
        assert_eq!(series.last().tau, 2.0);
    }

    #[test]
    fn long_time_decay() {
        let s = integrate_moments(MomentState::new(1.0, 0.0, 0.0, 0.0), 1.0, 3.0, 40.0, 1e-2)
            .unwrap();
        assert!(s.last().state.to_array().iter().all(|v| v.abs() <= 1e-6));
    }

    #[test]
    fn bad_grids_rejected() {
        let s0 = MomentState::new(1.0, 0.0, 0.0, 0.0);
        assert!(integrate_moments(s0, 1.0, 3.0, 1.0, 0.0).is_err());
        assert!(integrate_moments(s0, 1.0, 3.0, 1.0, 0.3).is_err());
        assert!(integrate_moments(s0, 1.0, 3.0, -1.0, 0.1).is_err());
        assert!(integrate_moments(MomentState::new(0.8, 0.8, 0.0, 0.0), 1.0, 3.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn divergence_reports_step() {
        // A huge step on a stiff rate blows up within a few steps.
        let err = integrate_moments(MomentState::new(1.0, 0.0, 0.0, 0.0), 1e154, 0.0, 1e3, 1.0)
            .unwrap_err();
        assert!(matches!(err, Error::Divergence { .. } | Error::PositivityViolation { .. }));
    }
}
