// SPDX-License-Identifier: Apache-2.0

use std::ops::{Add, Mul};

use ndarray::Array2;
use num_complex::Complex64;

use super::moments::MomentState;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianMatrix;
use crate::spectra::diagonalize;

/// Values down to this are clamped to zero before taking logarithms.
pub const ENTROPY_CLAMP: f64 = -1e-9;

/// Density matrix over `{|0>, |1,1>, |1,-1>}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DensityMatrix3(pub [[Complex64; 3]; 3]);

impl DensityMatrix3 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `|i><i|`.
    pub fn projector(i: usize) -> Self {
        let mut m = Self::default();
        m.0[i][i] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        (0..3).map(|i| self.0[i][i]).sum()
    }

    pub fn dagger(&self) -> Self {
        DensityMatrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].conj())
        }))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        DensityMatrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum())
        }))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        DensityMatrix3(self.0.map(|row| row.map(|z| z * k)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        *self + *other * -1.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_asymmetry(&self) -> f64 {
        self.sub(&self.dagger()).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Reads back `(x, y, u, w)`; `ρ_{+-} = u − i w`.
    pub fn moments(&self) -> MomentState {
        let coherence = self.0[1][2];
        MomentState::new(self.0[1][1].re, self.0[2][2].re, coherence.re, -coherence.im)
    }

    /// Ascending eigenvalues of the Hermitian part.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let m = Array2::from_shape_fn((3, 3), |(i, j)| (self.0[i][j] + self.0[j][i].conj()) * 0.5);
        Ok(diagonalize(&HamiltonianMatrix::unlabeled(m)?)?.eigenvalues().to_vec())
    }
}

impl Add for DensityMatrix3 {
    type Output = DensityMatrix3;

    fn add(self, o: DensityMatrix3) -> DensityMatrix3 {
        DensityMatrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j] + o.0[i][j])
        }))
    }
}

impl Mul<f64> for DensityMatrix3 {
    type Output = DensityMatrix3;

    fn mul(self, k: f64) -> DensityMatrix3 {
        DensityMatrix3(self.0.map(|row| row.map(|z| z * k)))
    }
}

/// `W = (1−x−y)|0><0| + x|1,1><1,1| + y|1,-1><1,-1| + (u − iw)|1,1><1,-1| + (u + iw)|1,-1><1,1|`.
pub fn reconstruct_density(s: &MomentState) -> DensityMatrix3 {
    let mut m = DensityMatrix3::default();
    m.0[0][0] = Complex64::new(s.ground(), 0.0);
    m.0[1][1] = Complex64::new(s.x, 0.0);
    m.0[2][2] = Complex64::new(s.y, 0.0);
    m.0[1][2] = Complex64::new(s.u, -s.w);
    m.0[2][1] = Complex64::new(s.u, s.w);
    m
}

/// Eigenvalues `U_{e1,2} = (x+y)/2 ± √((x−y)²/4 + u² + w²)` of the excited
/// block.
pub fn excited_eigenvalues(s: &MomentState) -> (f64, f64) {
    let mean = 0.5 * (s.x + s.y);
    let r = (0.25 * (s.x - s.y).powi(2) + s.u * s.u + s.w * s.w).sqrt();
    (mean + r, mean - r)
}

/// `S = −<U_0^0> ln<U_0^0> − U_e1 ln U_e1 − U_e2 ln U_e2`, natural log,
/// `0 ln 0 = 0`. Arguments in `[ENTROPY_CLAMP, 0)` count as zero; anything
/// more negative is a positivity violation.
pub fn entropy(s: &MomentState) -> Result<f64> {
    let (e1, e2) = excited_eigenvalues(s);
    let mut total = 0.0;
    for (quantity, v) in [("ground population", s.ground()), ("U_e1", e1), ("U_e2", e2)] {
        if v.is_nan() || v < ENTROPY_CLAMP {
            return Err(Error::PositivityViolation { quantity, value: v });
        }
        if v > 0.0 {
            total -= v * v.ln();
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_examples() {
        let d = reconstruct_density(&MomentState::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!(d, DensityMatrix3::projector(1));
        let d = reconstruct_density(&MomentState::default());
        assert_eq!(d, DensityMatrix3::projector(0));
        let d = reconstruct_density(&MomentState::new(0.5, 0.5, 0.0, 0.0));
        assert_eq!(d, (DensityMatrix3::projector(1) + DensityMatrix3::projector(2)) * 0.5);
    }

    #[test]
    fn reconstruction_round_trips() {
        let s = MomentState::new(0.4, 0.3, 0.1, -0.2);
        let d = reconstruct_density(&s);
        assert_eq!(d.moments(), s);
        assert!((d.trace().re - 1.0).abs() < 1e-15);
        assert_eq!(d.max_asymmetry(), 0.0);
        let (e1, e2) = excited_eigenvalues(&s);
        let eig = d.eigenvalues().unwrap();
        let mut expected = [s.ground(), e1, e2];
        expected.sort_by(f64::total_cmp);
        for (a, b) in eig.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&MomentState::new(1.0, 0.0, 0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(entropy(&MomentState::default()).unwrap(), 0.0);
        let s = entropy(&MomentState::new(0.5, 0.5, 0.0, 0.0)).unwrap();
        assert!((s - std::f64::consts::LN_2).abs() < 1e-15);
        // A pure superposition of the two excited states.
        let s = entropy(&MomentState::new(0.5, 0.5, 0.5, 0.0)).unwrap();
        assert!(s.abs() < 1e-15);
    }

    #[test]
    fn entropy_positivity() {
        assert!(entropy(&MomentState::new(1.0 + 5e-10, 0.0, 0.0, 0.0)).is_ok());
        match entropy(&MomentState::new(0.2, 0.2, 0.5, 0.0)) {
            Err(Error::PositivityViolation { quantity, value }) => {
                assert_eq!(quantity, "U_e2");
                assert!((value + 0.3).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }
}
