// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters of the two-cavity decay model derived from the couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DynamicsParams {
    /// `c₂ / c₁`.
    pub p: f64,
    /// `λ₁ τ₁`.
    pub q: f64,
    /// Photonic weight of the upper dressed state `|1,1>`.
    pub c1: f64,
    /// Photonic weight of the lower dressed state `|1,-1>`.
    pub c2: f64,
    /// Half splitting `½√(4g² + χ²)`.
    pub lambda1: f64,
    /// `ω + χ/2`.
    pub omega_tilde: f64,
    pub gamma: f64,
}

impl DynamicsParams {
    /// Symmetric (φ = 0) single-excitation levels `λ_{1,±1} = (χ ± √(4g²+χ²))/2`
    /// with photonic coefficients `√(λ²/(g²+λ²))`.
    pub fn derive(g: f64, chi: f64, gamma: f64, omega: f64) -> Result<Self> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::invalid(format!("g must be positive, got {g}")));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::invalid(format!("gamma must be positive, got {gamma}")));
        }
        if !chi.is_finite() || !omega.is_finite() {
            return Err(Error::invalid("chi and omega must be finite"));
        }
        let root = (4.0 * g * g + chi * chi).sqrt();
        let upper = 0.5 * (chi + root);
        let lower = 0.5 * (chi - root);
        let photonic = |l: f64| (l * l / (g * g + l * l)).sqrt();
        let c1 = photonic(upper);
        let c2 = photonic(lower);
        if c1.is_nan() || c1 <= 0.0 {
            return Err(Error::Degenerate(
                "upper dressed state has no photonic weight".into(),
            ));
        }
        let lambda1 = 0.5 * root;
        let rate = 2.0 * gamma * c1 * c1;
        Ok(DynamicsParams {
            p: c2 / c1,
            q: lambda1 / rate,
            c1,
            c2,
            lambda1,
            omega_tilde: omega + 0.5 * chi,
            gamma,
        })
    }

    /// `1/τ₁ = 2γc₁²`, the factor converting `t` into `τ`.
    pub fn time_scale(&self) -> f64 {
        2.0 * self.gamma * self.c1 * self.c1
    }

    /// `1/τ₂ = 2γc₂²`.
    pub fn lower_decay_rate(&self) -> f64 {
        2.0 * self.gamma * self.c2 * self.c2
    }
}
