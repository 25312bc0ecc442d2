// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.

use ndarray::{Array2, Axis};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::{max_asymmetry, BasisLabels, HamiltonianMatrix};

const MAX_SWEEPS: usize = 100;
/// Relative input asymmetry accepted before symmetrizing.
const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues closer than this share a degenerate block.
pub const DEGENERACY_GAP: f64 = 1e-9;
/// Relative residual bound `‖Hv − λv‖ ≤ tol·‖H‖`.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Array2<Complex64>,
    labels: BasisLabels,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Array2<Complex64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k).to_vec()
    }

    pub fn labels(&self) -> &BasisLabels {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `max_k ‖H v_k − λ_k v_k‖`.
    pub fn max_residual(&self, h: &HamiltonianMatrix) -> f64 {
        let hv = h.matrix().dot(&self.eigenvectors);
        (0..self.len())
            .map(|k| {
                hv.column(k)
                    .iter()
                    .zip(self.eigenvectors.column(k))
                    .map(|(a, v)| (a - v * self.eigenvalues[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `max |V†V − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.eigenvectors.t().mapv(|z| z.conj()).dot(&self.eigenvectors);
        gram.indexed_iter()
            .map(|((i, j), z)| {
                let target = if i == j { 1.0 } else { 0.0 };
                (z - target).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn frobenius(m: &Array2<Complex64>) -> f64 {
    m.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// Diagonalizes a Hermitian matrix.
///
/// The scheme is fully deterministic: fixed cyclic pivot order, stable sort of
/// the eigenvalues, degenerate blocks (gap below [`DEGENERACY_GAP`]) replaced
/// by the ordered Gram–Schmidt of the canonical unit vectors projected onto
/// the block, and every vector's largest component made real positive.
pub fn diagonalize(h: &HamiltonianMatrix) -> Result<Spectrum> {
    let m = h.matrix();
    let n = m.nrows();
    let asym = max_asymmetry(m);
    if asym > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian {
            max_asymmetry: asym,
        });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid("matrix has non-finite entries"));
    }

    let mut a = Array2::from_shape_fn((n, n), |(i, j)| (m[[i, j]] + m[[j, i]].conj()) * 0.5);
    let mut v = Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::default()
        }
    });
    let scale = frobenius(&a);
    jacobi_sweeps(&mut a, &mut v, scale)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[i, i]].re.total_cmp(&a[[j, j]].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[[i, i]].re).collect();
    let mut vectors = v.select(Axis(1), &order);

    canonicalize_degenerate(&eigenvalues, &mut vectors);
    for k in 0..n {
        fix_phase(&mut vectors, k);
    }

    let spectrum = Spectrum {
        eigenvalues,
        eigenvectors: vectors,
        labels: h.labels().clone(),
    };
    let residual = spectrum.max_residual(h);
    if residual > RESIDUAL_TOL * frobenius(m) {
        return Err(Error::Eigensolver(format!(
            "residual {residual:e} exceeds {RESIDUAL_TOL:e}·‖H‖"
        )));
    }
    Ok(spectrum)
}

fn jacobi_sweeps(a: &mut Array2<Complex64>, v: &mut Array2<Complex64>, scale: f64) -> Result<()> {
    let n = a.nrows();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = a
            .indexed_iter()
            .filter(|((i, j), _)| i != j)
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale || off == 0.0 {
            return Ok(());
        }
        for p in 0..n {
            for q in p + 1..n {
                let r = a[[p, q]].norm();
                if r <= 1e-300 {
                    continue;
                }
                rotate(a, v, p, q, r);
            }
        }
    }
    Err(Error::Eigensolver(format!(
        "no convergence after {MAX_SWEEPS} sweeps"
    )))
}

/// Zeroes `a[p,q]`: a diagonal phase makes it real, then a real plane
/// rotation annihilates it.
fn rotate(a: &mut Array2<Complex64>, v: &mut Array2<Complex64>, p: usize, q: usize, r: f64) {
    let n = a.nrows();
    let phase = a[[p, q]] / r;
    for k in 0..n {
        a[[k, q]] *= phase.conj();
        v[[k, q]] *= phase.conj();
    }
    for k in 0..n {
        a[[q, k]] *= phase;
    }

    let app = a[[p, p]].re;
    let aqq = a[[q, q]].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let (akp, akq) = (a[[k, p]], a[[k, q]]);
        a[[k, p]] = akp * c - akq * s;
        a[[k, q]] = akp * s + akq * c;
        let (vkp, vkq) = (v[[k, p]], v[[k, q]]);
        v[[k, p]] = vkp * c - vkq * s;
        v[[k, q]] = vkp * s + vkq * c;
    }
    for k in 0..n {
        let (apk, aqk) = (a[[p, k]], a[[q, k]]);
        a[[p, k]] = apk * c - aqk * s;
        a[[q, k]] = apk * s + aqk * c;
    }
    a[[p, q]] = Complex64::default();
    a[[q, p]] = Complex64::default();
    a[[p, p]] = Complex64::new(app - t * r, 0.0);
    a[[q, q]] = Complex64::new(aqq + t * r, 0.0);
}

fn canonicalize_degenerate(eigenvalues: &[f64], vectors: &mut Array2<Complex64>) {
    let n = eigenvalues.len();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] < DEGENERACY_GAP {
            end += 1;
        }
        if end - start > 1 {
            let block: Vec<Vec<Complex64>> =
                (start..end).map(|k| vectors.column(k).to_vec()).collect();
            let basis = project_canonical(&block, vectors.nrows());
            for (offset, vec) in basis.into_iter().enumerate() {
                for (i, z) in vec.into_iter().enumerate() {
                    vectors[[i, start + offset]] = z;
                }
            }
        }
        start = end;
    }
}

/// Orthonormal basis of span(block) built from projections of e_0, e_1, ...
fn project_canonical(block: &[Vec<Complex64>], dim: usize) -> Vec<Vec<Complex64>> {
    let mut accepted: Vec<Vec<Complex64>> = Vec::with_capacity(block.len());
    for i in 0..dim {
        if accepted.len() == block.len() {
            break;
        }
        // P e_i = Σ_b b (b_i)*
        let mut w = vec![Complex64::default(); dim];
        for b in block {
            let coeff = b[i].conj();
            for (wk, bk) in w.iter_mut().zip(b) {
                *wk += bk * coeff;
            }
        }
        for u in &accepted {
            let overlap: Complex64 = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
            for (wk, uk) in w.iter_mut().zip(u) {
                *wk -= uk * overlap;
            }
        }
        let norm = w.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-6 {
            accepted.push(w.into_iter().map(|z| z / norm).collect());
        }
    }
    accepted
}

/// Rotates column `k` so its largest-magnitude component (first on ties) is
/// real and positive.
fn fix_phase(vectors: &mut Array2<Complex64>, k: usize) {
    let col = vectors.column(k);
    let largest = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if largest == 0.0 {
        return;
    }
    let pivot = col
        .iter()
        .position(|z| z.norm() >= largest - 1e-12)
        .expect("maximum exists");
    let z = col[pivot];
    let phase = z.conj() / z.norm();
    vectors.column_mut(k).mapv_inplace(|x| x * phase);
    vectors[[pivot, k]] = Complex64::new(vectors[[pivot, k]].norm(), 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn real(rows: &[&[f64]]) -> HamiltonianMatrix {
        HamiltonianMatrix::from_real(rows).unwrap()
    }

    #[test]
    fn diagonal_input() {
        let s = diagonalize(&real(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]])).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn golden_ratio_block() {
        let h = real(&[&[0.0, 1.0], &[1.0, 1.0]]);
        let s = diagonalize(&h).unwrap();
        let r5 = 5f64.sqrt();
        assert!((s.eigenvalues()[0] - (1.0 - r5) / 2.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - (1.0 + r5) / 2.0).abs() < 1e-14);
        assert!(s.max_residual(&h) < 1e-14);
    }

    #[test]
    fn complex_hermitian() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let m = array![[one * 2.0, i], [-i, one * 2.0]];
        let h = HamiltonianMatrix::unlabeled(m).unwrap();
        let s = diagonalize(&h).unwrap();
        assert!((s.eigenvalues()[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - 3.0).abs() < 1e-14);
        assert!(s.orthonormality_error() < 1e-14);
        assert!(s.max_residual(&h) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let err = diagonalize(&real(&[&[0.0, 1.0], &[0.5, 0.0]])).unwrap_err();
        match err {
            Error::NotHermitian { max_asymmetry } => assert!((max_asymmetry - 0.5).abs() < 1e-15),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn degenerate_block_is_canonical() {
        // Eigenvalue 1 twice, 4 once; the rotated input must not leak into the
        // canonical degenerate basis.
        let h = real(&[&[2.0, 1.0, 1.0], &[1.0, 2.0, 1.0], &[1.0, 1.0, 2.0]]);
        let s = diagonalize(&h).unwrap();
        assert!((s.eigenvalues()[0] - 1.0).abs() < 1e-13);
        assert!((s.eigenvalues()[1] - 1.0).abs() < 1e-13);
        assert!((s.eigenvalues()[2] - 4.0).abs() < 1e-13);
        // P e_0 over the (1,1,1)-orthogonal plane is (2,-1,-1)/√6.
        let v0 = s.eigenvector(0);
        let r6 = 6f64.sqrt();
        for (z, e) in v0.iter().zip([2.0 / r6, -1.0 / r6, -1.0 / r6]) {
            assert!((z.re - e).abs() < 1e-12 && z.im.abs() < 1e-12);
        }
        assert!(s.orthonormality_error() < 1e-13);
    }

    #[test]
    fn repeated_runs_are_identical() {
        let h = real(&[
            &[0.3, 1.2, 0.0, 0.4],
            &[1.2, -0.7, 2.2, 0.0],
            &[0.0, 2.2, 1.5, 0.9],
            &[0.4, 0.0, 0.9, 0.1],
        ]);
        let a = diagonalize(&h).unwrap();
        let b = diagonalize(&h).unwrap();
        assert_eq!(a, b);
        let trace: f64 = a.eigenvalues().iter().sum();
        assert!((trace - h.trace()).abs() < 1e-12);
    }

    #[test]
    fn empty_matrix() {
        let h = real(&[]);
        assert!(diagonalize(&h).unwrap().is_empty());
    }
}
