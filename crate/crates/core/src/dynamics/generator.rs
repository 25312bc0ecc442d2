// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use serde::Serialize;

use super::density::{reconstruct_density, DensityMatrix3};
use super::moments::{moment_matrix, MomentState};
use super::params::DynamicsParams;
use super::{rk4_step, step_count};
use crate::error::{Error, Result};

pub const MOMENT_NAMES: [&str; 4] = ["x", "y", "u", "w"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorForm {
    /// `dW/dt = iλ₁[W, U₊ − U₋] − γ[W L†, L] + H.c.` taken term by term.
    PaperCommutator,
    /// `dW/dt = −i[H, W] + 2γ(L W L† − ½{L†L, W})`.
    StandardLindblad,
}

impl GeneratorForm {
    pub const ALL: [GeneratorForm; 2] = [GeneratorForm::PaperCommutator, GeneratorForm::StandardLindblad];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorForm::PaperCommutator => "paper-commutator",
            GeneratorForm::StandardLindblad => "standard-lindblad",
        }
    }
}

/// Linear map `W ↦ dW/dt` on the three-level density matrix, with
/// `H = λ₁(|1,1><1,1| − |1,-1><1,-1|)` and `L = c₁|0><1,1| + c₂|0><1,-1|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayGenerator {
    pub form: GeneratorForm,
    pub lambda1: f64,
    pub c1: f64,
    pub c2: f64,
    pub gamma: f64,
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

impl DecayGenerator {
    pub fn new(params: &DynamicsParams, form: GeneratorForm) -> Self {
        DecayGenerator {
            form,
            lambda1: params.lambda1,
            c1: params.c1,
            c2: params.c2,
            gamma: params.gamma,
        }
    }

    pub fn zero() -> Self {
        DecayGenerator {
            form: GeneratorForm::StandardLindblad,
            lambda1: 0.0,
            c1: 0.0,
            c2: 0.0,
            gamma: 0.0,
        }
    }

    fn splitting(&self) -> DensityMatrix3 {
        let mut d = DensityMatrix3::zero();
        d.0[1][1] = real(1.0);
        d.0[2][2] = real(-1.0);
        d
    }

    fn jump(&self) -> DensityMatrix3 {
        let mut l = DensityMatrix3::zero();
        l.0[0][1] = real(self.c1);
        l.0[0][2] = real(self.c2);
        l
    }

    pub fn apply(&self, w: &DensityMatrix3) -> DensityMatrix3 {
        let delta = self.splitting();
        let l = self.jump();
        let ld = l.dagger();
        let i = Complex64::new(0.0, 1.0);
        match self.form {
            GeneratorForm::PaperCommutator => {
                let coherent = w.matmul(&delta).sub(&delta.matmul(w)).scale(i * self.lambda1);
                let wl = w.matmul(&ld);
                let decay = wl.matmul(&l).sub(&l.matmul(&wl)).scale(real(-self.gamma));
                coherent + decay + decay.dagger()
            }
            GeneratorForm::StandardLindblad => {
                let h = delta * self.lambda1;
                let coherent = h.matmul(w).sub(&w.matmul(&h)).scale(-i);
                let ldl = ld.matmul(&l);
                let anti = ldl.matmul(w) + w.matmul(&ldl);
                let dissipator = l.matmul(w).matmul(&ld).sub(&(anti * 0.5)) * (2.0 * self.gamma);
                coherent + dissipator
            }
        }
    }
}

/// Fixed-step RK4 in physical time `t`, one snapshot per step including
/// `t = 0` and `t = t_end`.
pub fn evolve_density(
    w0: DensityMatrix3,
    generator: &DecayGenerator,
    t_end: f64,
    dt: f64,
) -> Result<Vec<(f64, DensityMatrix3)>> {
    if w0.max_asymmetry() > 1e-12 || (w0.trace() - 1.0).norm() > 1e-12 {
        return Err(Error::invalid("initial density must be Hermitian with unit trace"));
    }
    if let Some(&low) = w0.eigenvalues()?.first() {
        if low < -1e-6 {
            return Err(Error::PositivityViolation { quantity: "density eigenvalue", value: low });
        }
    }
    let steps = step_count(t_end, dt)?;
    let rhs = |w: &DensityMatrix3| generator.apply(w);
    let mut out = Vec::with_capacity(steps + 1);
    let mut w = w0;
    out.push((0.0, w));
    for k in 1..=steps {
        w = rk4_step(&rhs, &w, dt);
        if !w.is_finite() {
            return Err(Error::Divergence { step: k });
        }
        out.push((if k == steps { t_end } else { k as f64 * dt }, w));
    }
    Ok(out)
}

/// Coefficient matrix of `d(x, y, u, w)/dτ` implied by the generator, read
/// off column by column from the images of the reconstructed unit states.
pub fn moment_coefficients(generator: &DecayGenerator) -> Result<[[f64; 4]; 4]> {
    let rate = 2.0 * generator.gamma * generator.c1 * generator.c1;
    if rate.is_nan() || rate <= 0.0 {
        return Err(Error::Degenerate("upper level does not decay".into()));
    }
    let origin = generator.apply(&reconstruct_density(&MomentState::default())).moments();
    let mut a = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut e = [0.0; 4];
        e[j] = 1.0;
        let image = generator.apply(&reconstruct_density(&MomentState::from_array(e))).moments();
        let column = image.to_array();
        let base = origin.to_array();
        for i in 0..4 {
            a[i][j] = (column[i] - base[i]) / rate;
        }
    }
    Ok(a)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientEntry {
    pub row: &'static str,
    pub column: &'static str,
    pub generator: f64,
    pub moment_system: f64,
    pub difference: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyTable {
    pub form: GeneratorForm,
    pub p: f64,
    pub q: f64,
    pub tolerance: f64,
    pub entries: Vec<CoefficientEntry>,
}

impl ConsistencyTable {
    pub fn disagreements(&self) -> impl Iterator<Item = &CoefficientEntry> {
        self.entries.iter().filter(|e| !e.agrees)
    }

    pub fn entry(&self, row: &str, column: &str) -> Option<&CoefficientEntry> {
        self.entries.iter().find(|e| e.row == row && e.column == column)
    }
}

/// Compares every coefficient of the generator-derived moment system with
/// [`moment_matrix`] at the same `(p, q)`.
pub fn generator_consistency(
    params: &DynamicsParams,
    form: GeneratorForm,
    tolerance: f64,
) -> Result<ConsistencyTable> {
    let derived = moment_coefficients(&DecayGenerator::new(params, form))?;
    let printed = moment_matrix(params.p, params.q);
    let mut entries = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            let difference = (derived[i][j] - printed[i][j]).abs();
            entries.push(CoefficientEntry {
                row: MOMENT_NAMES[i],
                column: MOMENT_NAMES[j],
                generator: derived[i][j],
                moment_system: printed[i][j],
                difference,
                agrees: difference <= tolerance,
            });
        }
    }
    Ok(ConsistencyTable { form, p: params.p, q: params.q, tolerance, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> DynamicsParams {
        DynamicsParams::derive(1.0, 1.0, 0.3, 0.0).unwrap()
    }

    fn sample_density() -> DensityMatrix3 {
        let mut w = reconstruct_density(&MomentState::new(0.3, 0.25, 0.1, -0.05));
        w.0[0][1] = Complex64::new(0.05, 0.02);
        w.0[1][0] = w.0[0][1].conj();
        w
    }

    #[test]
    fn forms_agree_and_preserve_trace() {
        let w = sample_density();
        let a = DecayGenerator::new(&params(), GeneratorForm::PaperCommutator).apply(&w);
        let b = DecayGenerator::new(&params(), GeneratorForm::StandardLindblad).apply(&w);
        assert!(a.sub(&b).max_abs() < 1e-15);
        assert!(a.trace().norm() < 1e-15);
        assert!(a.max_asymmetry() < 1e-15);
    }

    #[test]
    fn zero_generator_is_constant() {
        let series = evolve_density(sample_density(), &DecayGenerator::zero(), 1.0, 0.1).unwrap();
        assert_eq!(series.len(), 11);
        assert!(series.iter().all(|(_, w)| *w == sample_density()));
    }

    #[test]
    fn single_channel_decay() {
        let g = DecayGenerator {
            form: GeneratorForm::StandardLindblad,
            lambda1: 0.0,
            c1: 0.8,
            c2: 0.0,
            gamma: 0.5,
        };
        let series = evolve_density(DensityMatrix3::projector(1), &g, 3.0, 1e-3).unwrap();
        for (t, w) in series.iter().step_by(250) {
            let expected = (-2.0 * 0.5 * 0.64 * t).exp();
            assert!((w.get(1, 1).re - expected).abs() < 1e-8);
            assert!((w.trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn coefficient_table_locates_coherence_decay() {
        let p = params();
        let table = generator_consistency(&p, GeneratorForm::StandardLindblad, 1e-8).unwrap();
        let mut off: Vec<_> = table.disagreements().map(|e| (e.row, e.column)).collect();
        off.sort();
        assert_eq!(off, vec![("u", "u"), ("w", "w")]);
        let uu = table.entry("u", "u").unwrap();
        assert!((uu.generator - 0.5 * uu.moment_system).abs() < 1e-12);
    }

    #[test]
    fn invalid_initial_density() {
        let g = DecayGenerator::new(&params(), GeneratorForm::StandardLindblad);
        assert!(evolve_density(DensityMatrix3::projector(1) * 2.0, &g, 1.0, 0.1).is_err());
        let w = reconstruct_density(&MomentState::new(0.2, 0.2, 0.5, 0.0));
        assert!(matches!(
            evolve_density(w, &g, 1.0, 0.1),
            Err(Error::PositivityViolation { .. })
        ));
    }
}
