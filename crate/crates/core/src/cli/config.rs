// SPDX-License-Identifier: Apache-2.0

//! The JSON run configuration. Every field is optional; command-line flags
//! are merged on top before validation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::compare::CompareItem;
use super::OutputFormat;
use crate::dynamics::MomentState;
use crate::error::{Error, Result};
use crate::hamiltonian::TopologyKind;
use crate::symmetry::GroupKind;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub dynamics: DynamicsConfig,
    pub sweep: SweepConfig,
    pub compare: CompareConfig,
    pub output: OutputConfig,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemConfig {
    pub n_cavities: Option<usize>,
    pub n_excitations: Option<u32>,
    pub fock_cutoff: Option<u32>,
    pub g: Option<f64>,
    pub chi: Option<f64>,
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    /// Phase angle, 0 or π.
    pub phi: Option<f64>,
    pub group: Option<GroupKind>,
    pub topology: Option<TopologyKind>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicsConfig {
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub derive: Option<DeriveConfig>,
    pub x0: Option<f64>,
    pub y0: Option<f64>,
    pub u0: Option<f64>,
    pub w0: Option<f64>,
    pub tau_end: Option<f64>,
    pub dt: Option<f64>,
}

/// Physical couplings from which `p` and `q` are derived. Missing values
/// fall back to the `system` section.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeriveConfig {
    pub g: Option<f64>,
    pub chi: Option<f64>,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub g: Option<Vec<f64>>,
    pub chi: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareConfig {
    pub items: Option<Vec<CompareItem>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

pub const DEFAULT_G: f64 = 1.0;
pub const DEFAULT_CHI: f64 = 1.0;
pub const DEFAULT_GAMMA: f64 = 1.0;
pub const DEFAULT_TAU_END: f64 = 10.0;
pub const DEFAULT_DT: f64 = 1e-3;

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn g(&self) -> f64 {
        self.system.g.unwrap_or(DEFAULT_G)
    }

    pub fn chi(&self) -> f64 {
        self.system.chi.unwrap_or(DEFAULT_CHI)
    }

    pub fn omega(&self) -> f64 {
        self.system.omega.unwrap_or(0.0)
    }

    pub fn gamma(&self) -> f64 {
        self.system.gamma.unwrap_or(DEFAULT_GAMMA)
    }

    pub fn initial_state(&self) -> Result<MomentState> {
        let d = &self.dynamics;
        let s = MomentState::new(
            d.x0.unwrap_or(0.0),
            d.y0.unwrap_or(0.0),
            d.u0.unwrap_or(0.0),
            d.w0.unwrap_or(0.0),
        );
        s.validate()?;
        Ok(s)
    }

    pub fn time_grid(&self) -> Result<(f64, f64)> {
        let tau_end = self.dynamics.tau_end.unwrap_or(DEFAULT_TAU_END);
        let dt = self.dynamics.dt.unwrap_or(DEFAULT_DT);
        crate::dynamics::check_time_grid(tau_end, dt)?;
        Ok((tau_end, dt))
    }

    /// Couplings `(g, chi, gamma, omega)` for derived dynamics.
    pub fn derive_couplings(&self) -> Option<(f64, f64, f64, f64)> {
        self.dynamics.derive.as_ref().map(|d| {
            (
                d.g.unwrap_or(self.g()),
                d.chi.unwrap_or(self.chi()),
                d.gamma.unwrap_or(self.gamma()),
                d.omega.unwrap_or(self.omega()),
            )
        })
    }

    pub fn format(&self) -> OutputFormat {
        self.output.format.unwrap_or_default()
    }

    pub fn jobs(&self) -> Result<usize> {
        match self.jobs {
            Some(0) => Err(Error::invalid("jobs must be >= 1")),
            Some(n) => Ok(n),
            None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }
}

/// A sweep axis: non-empty, finite and strictly increasing.
pub fn check_grid(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::invalid(format!("sweep grid {name} is empty")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("sweep grid {name} has non-finite values")));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!(
            "sweep grid {name} must be strictly increasing"
        )));
    }
    Ok(())
}
