// SPDX-License-Identifier: Apache-2.0

//! Closed-form dressed levels of the collective blocks.
//!
//! These are claims checked against the Jacobi oracle, never used in its
//! place. The two-excitation formulas are evaluated exactly as printed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::Phase;

/// One dressed level: eigenvalue and superposition coefficients over the
/// collective states of its manifold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DressedLevel {
    /// Level label: `±1` for one excitation, `-2..=2` for two.
    pub level: i32,
    pub n_ex: u32,
    pub lambda: f64,
    pub coefficients: Vec<f64>,
}

fn check_couplings(g: f64, chi: f64) -> Result<()> {
    if !g.is_finite() || !chi.is_finite() {
        return Err(Error::invalid("couplings must be finite"));
    }
    if g < 0.0 {
        return Err(Error::invalid(format!("g must be >= 0, got {g}")));
    }
    if g == 0.0 && chi == 0.0 {
        return Err(Error::Degenerate("g = chi = 0 leaves every level at 0".into()));
    }
    Ok(())
}

/// Normalized eigenvector `(c_atomic, c_photonic)` of `[[0, g], [g, d]]`
/// for eigenvalue `lambda`; the atomic component is non-negative.
fn two_level_vector(g: f64, lambda: f64) -> [f64; 2] {
    let norm = (g * g + lambda * lambda).sqrt();
    if g == 0.0 {
        // Uncoupled: λ = 0 is the atomic state, the other level is photonic.
        return if lambda == 0.0 { [1.0, 0.0] } else { [0.0, 1.0] };
    }
    [g / norm, lambda / norm]
}

/// Two cavities, one excitation, block `[[0, g], [g, e^{iφ}χ]]` over
/// `(ψ11, ψ12)`:
/// `λ_{±1} = (e^{iφ}χ ± √(4g² + χ²)) / 2`,
/// `|c_{i,1}| = √(g²/(g²+λ²))`, `|c_{i,2}| = √(λ²/(g²+λ²))`, with
/// `c_{i,2}` carrying the sign of `λ`.
///
/// Returned in ascending order (level −1 first).
pub fn analytic_two_cavity_one_exc(g: f64, chi: f64, phi: Phase) -> Result<Vec<DressedLevel>> {
    check_couplings(g, chi)?;
    let root = (4.0 * g * g + chi * chi).sqrt();
    let centre = phi.sign() * chi;
    Ok([-1, 1]
        .into_iter()
        .map(|level| {
            let lambda = 0.5 * (centre + level as f64 * root);
            DressedLevel {
                level,
                n_ex: 1,
                lambda,
                coefficients: two_level_vector(g, lambda).to_vec(),
            }
        })
        .collect())
}

/// Ring of `n ≥ 3` cavities, one excitation, block `[[0, g], [g, 2χ]]`:
/// `λ_{±1} = χ ± √(χ² + g²)`, coefficients from the block's eigenvectors.
pub fn analytic_ring_one_exc(g: f64, chi: f64) -> Result<Vec<DressedLevel>> {
    check_couplings(g, chi)?;
    let root = (chi * chi + g * g).sqrt();
    Ok([-1, 1]
        .into_iter()
        .map(|level| {
            let lambda = chi + level as f64 * root;
            DressedLevel {
                level,
                n_ex: 1,
                lambda,
                coefficients: two_level_vector(g, lambda).to_vec(),
            }
        })
        .collect())
}

/// The printed photonic coefficient for the ring, `√(χ²/(g²+λ²))`.
///
/// It normalizes with the atomic one only when `λ² = χ²`; kept for
/// reporting.
pub fn printed_ring_photonic_coefficient(g: f64, chi: f64, lambda: f64) -> f64 {
    (chi * chi / (g * g + lambda * lambda)).sqrt()
}

/// `λ_{2,-2}, λ_{2,-1}, λ_{2,0}, λ_{2,1}, λ_{2,2}` for two cavities with two
/// excitations, evaluated verbatim:
///
/// `λ_{2,±1} = ±√(5g² + 3χ² − √((3g² + χ²)² + 12(1 + e^{iφ})g²χ²)) / √2`,
/// `λ_{2,±2} = ±√(5g² + 3χ² + √((3g² + χ²)² + 24g²χ²)) / √2`, `λ_{2,0} = 0`.
pub fn two_cavity_two_exc_eigenvalues(g: f64, chi: f64, phi: Phase) -> Result<[f64; 5]> {
    check_couplings(g, chi)?;
    let (g2, c2) = (g * g, chi * chi);
    let base = 3.0 * g2 + c2;
    let inner_1 = (base * base + 12.0 * (1.0 + phi.sign()) * g2 * c2).sqrt();
    let inner_2 = (base * base + 24.0 * g2 * c2).sqrt();
    let outer = |radicand: f64| -> Result<f64> {
        if radicand < -1e-12 * (g2 + c2) {
            return Err(Error::SingularPoint {
                level: "lambda_{2,1}".into(),
                detail: format!("negative radicand {radicand:e}"),
            });
        }
        Ok((radicand.max(0.0) / 2.0).sqrt())
    };
    let l1 = outer(5.0 * g2 + 3.0 * c2 - inner_1)?;
    let l2 = outer(5.0 * g2 + 3.0 * c2 + inner_2)?;
    Ok([-l2, -l1, 0.0, l1, l2])
}

/// Two-excitation levels with the printed coefficients over
/// `(ψ21, ..., ψ25)`. With `D = 2χ² + g² − λ²`:
///
/// - `c_1 = √2 g |D| / √(λ⁶ + λ⁴(2g² − 3χ²) + λ²g²(13χ² − 7g²) + 4(χ⁶ + g⁶) + 8g⁴χ² + 2g²χ⁴)`
/// - `c_2 = χ/(√2 g) (1 − 3g²/D) c_1`
/// - `c_3 = λ/(√2 g) c_1`
/// - `c_4 = −3λχ c_1 / (√2 D)`
/// - `c_5 = (1 − 3χ²/D) c_1`
///
/// Fails with a singular-point error naming the level when `D` vanishes,
/// as it does for `λ_{2,±1}` at `χ = 0`.
pub fn analytic_two_cavity_two_exc(g: f64, chi: f64, phi: Phase) -> Result<Vec<DressedLevel>> {
    let lambdas = two_cavity_two_exc_eigenvalues(g, chi, phi)?;
    if g == 0.0 {
        return Err(Error::SingularPoint {
            level: "all".into(),
            detail: "coefficients divide by g".into(),
        });
    }
    let (g2, c2) = (g * g, chi * chi);
    let scale = g2 + c2;
    let sqrt2 = std::f64::consts::SQRT_2;
    lambdas
        .iter()
        .zip(-2..=2)
        .map(|(&lambda, level)| {
            let l2 = lambda * lambda;
            let d = 2.0 * c2 + g2 - l2;
            if d.abs() <= 1e-12 * scale {
                return Err(Error::SingularPoint {
                    level: format!("lambda_{{2,{level}}}"),
                    detail: "2chi^2 + g^2 - lambda^2 = 0".into(),
                });
            }
            let poly = l2 * l2 * l2 + l2 * l2 * (2.0 * g2 - 3.0 * c2) + l2 * g2 * (13.0 * c2 - 7.0 * g2)
                + 4.0 * (c2 * c2 * c2 + g2 * g2 * g2)
                + 8.0 * g2 * g2 * c2
                + 2.0 * g2 * c2 * c2;
            if poly <= 0.0 {
                return Err(Error::SingularPoint {
                    level: format!("lambda_{{2,{level}}}"),
                    detail: format!("normalization radicand {poly:e}"),
                });
            }
            let c1 = sqrt2 * g * d.abs() / poly.sqrt();
            let coefficients = vec![
                c1,
                chi / (sqrt2 * g) * (1.0 - 3.0 * g2 / d) * c1,
                lambda / (sqrt2 * g) * c1,
                -3.0 * lambda * chi * c1 / (sqrt2 * d),
                (1.0 - 3.0 * c2 / d) * c1,
            ];
            Ok(DressedLevel {
                level,
                n_ex: 2,
                lambda,
                coefficients,
            })
        })
        .collect()
}

/// The five two-excitation eigenvalues for three cavities at `g = χ`, in
/// units of `g`, as tabulated in the literature this crate reproduces.
pub const THREE_CAVITY_REFERENCE: [f64; 5] = [-2.43065, -0.771049, 0.294764, 1.73598, 4.17096];
