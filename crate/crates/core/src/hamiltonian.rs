// SPDX-License-Identifier: Apache-2.0

//! Free and interaction Hamiltonians as dense Hermitian matrices (ħ = 1).
//!
//! `H_0 = ω Σ_i (R_zi + a_i† a_i)` with `R_z = ±1/2`, and
//! `H_I = g Σ_i (R_i⁺ a_i + R_i⁻ a_i†) + χ Σ_{edges} (a_i† a_j + a_j† a_i)`,
//! where each undirected edge of the hopping graph contributes once.

use std::fmt;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{AtomLevel, Basis, ProductState, SystemParams};
use crate::symmetry::{apply_permutation, CollectiveState, Permutation};

/// What each row/column of a [`HamiltonianMatrix`] stands for.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisLabels {
    /// Plain indices, for matrices not tied to a physical basis.
    Unlabeled(usize),
    Product(Basis),
    Collective(Vec<CollectiveState>),
}

impl BasisLabels {
    pub fn len(&self) -> usize {
        match self {
            BasisLabels::Unlabeled(n) => *n,
            BasisLabels::Product(b) => b.len(),
            BasisLabels::Collective(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> Vec<String> {
        match self {
            BasisLabels::Unlabeled(n) => (0..*n).map(|i| i.to_string()).collect(),
            BasisLabels::Product(b) => b.iter().map(ToString::to_string).collect(),
            BasisLabels::Collective(c) => c.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    matrix: Array2<Complex64>,
    labels: BasisLabels,
}

impl HamiltonianMatrix {
    pub fn new(matrix: Array2<Complex64>, labels: BasisLabels) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() != labels.len() {
            return Err(Error::invalid(format!(
                "matrix of shape {:?} does not match {} labels",
                matrix.dim(),
                labels.len()
            )));
        }
        Ok(HamiltonianMatrix { matrix, labels })
    }

    pub fn unlabeled(matrix: Array2<Complex64>) -> Result<Self> {
        let n = matrix.nrows();
        HamiltonianMatrix::new(matrix, BasisLabels::Unlabeled(n))
    }

    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut m = Array2::zeros((n, n));
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid("rows must form a square matrix"));
            }
            for (j, &v) in row.iter().enumerate() {
                m[[i, j]] = Complex64::new(v, 0.0);
            }
        }
        HamiltonianMatrix::unlabeled(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn labels(&self) -> &BasisLabels {
        &self.labels
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diag().iter().map(|z| z.re).sum()
    }

    pub fn max_asymmetry(&self) -> f64 {
        max_asymmetry(&self.matrix)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &HamiltonianMatrix) -> Result<HamiltonianMatrix> {
        if self.labels != other.labels {
            return Err(Error::invalid("cannot add matrices over different bases"));
        }
        Ok(HamiltonianMatrix {
            matrix: &self.matrix + &other.matrix,
            labels: self.labels.clone(),
        })
    }

    pub fn scaled(&self, factor: f64) -> HamiltonianMatrix {
        HamiltonianMatrix {
            matrix: self.matrix.mapv(|z| z * factor),
            labels: self.labels.clone(),
        }
    }
}

pub fn max_asymmetry(m: &Array2<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for ((i, j), z) in m.indexed_iter() {
        worst = worst.max((z - m[[j, i]].conj()).norm());
    }
    worst
}

/// `AB - BA`.
pub fn commutator(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    a.dot(b) - b.dot(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TopologyKind {
    /// Nearest neighbours on the polygon.
    #[default]
    Ring,
    /// Every pair of cavities.
    AllPairs,
}

impl std::str::FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring" => Ok(TopologyKind::Ring),
            "all-pairs" => Ok(TopologyKind::AllPairs),
            other => Err(Error::invalid(format!("unknown topology {other:?}"))),
        }
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::Ring => "ring",
            TopologyKind::AllPairs => "all-pairs",
        })
    }
}

/// Undirected hopping edges, each listed once as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTopology {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl RingTopology {
    pub fn new(kind: TopologyKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("need at least 2 cavities, got {n}")));
        }
        let mut edges: Vec<(usize, usize)> = match kind {
            TopologyKind::Ring => (0..n)
                .map(|i| {
                    let j = (i + 1) % n;
                    (i.min(j), i.max(j))
                })
                .collect(),
            TopologyKind::AllPairs => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect(),
        };
        edges.sort_unstable();
        edges.dedup();
        Ok(RingTopology { n, edges })
    }

    pub fn ring(n: usize) -> Result<Self> {
        Self::new(TopologyKind::Ring, n)
    }

    pub fn n_cavities(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Matrix of the linear map `s -> Σ c_k |t_k>` on `basis`. Images that fall
/// outside the basis (cutoff or other manifolds) are dropped.
pub fn operator_matrix<F>(basis: &Basis, action: F) -> Array2<Complex64>
where
    F: Fn(&ProductState) -> Vec<(ProductState, f64)>,
{
    let d = basis.len();
    let mut m = Array2::zeros((d, d));
    for (col, s) in basis.iter().enumerate() {
        for (t, c) in action(s) {
            if let Some(row) = basis.index_of(&t) {
                m[[row, col]] += Complex64::new(c, 0.0);
            }
        }
    }
    m
}

fn lower_photon(s: &ProductState, i: usize) -> Option<(ProductState, f64)> {
    let n = s.photons[i];
    (n > 0).then(|| {
        let mut t = s.clone();
        t.photons[i] -= 1;
        (t, (n as f64).sqrt())
    })
}

fn raise_photon(s: &ProductState, i: usize) -> (ProductState, f64) {
    let mut t = s.clone();
    t.photons[i] += 1;
    let c = (t.photons[i] as f64).sqrt();
    (t, c)
}

fn flip_atom(s: &ProductState, i: usize, from: AtomLevel, to: AtomLevel) -> Option<ProductState> {
    (s.atoms[i] == from).then(|| {
        let mut t = s.clone();
        t.atoms[i] = to;
        t
    })
}

/// `a_i`.
pub fn annihilation(basis: &Basis, i: usize) -> Array2<Complex64> {
    operator_matrix(basis, |s| lower_photon(s, i).into_iter().collect())
}

/// `a_i†`.
pub fn creation(basis: &Basis, i: usize) -> Array2<Complex64> {
    operator_matrix(basis, |s| vec![raise_photon(s, i)])
}

/// `R_i⁺`.
pub fn atom_raising(basis: &Basis, i: usize) -> Array2<Complex64> {
    operator_matrix(basis, |s| {
        flip_atom(s, i, AtomLevel::Ground, AtomLevel::Excited)
            .map(|t| (t, 1.0))
            .into_iter()
            .collect()
    })
}

/// `R_i⁻`.
pub fn atom_lowering(basis: &Basis, i: usize) -> Array2<Complex64> {
    operator_matrix(basis, |s| {
        flip_atom(s, i, AtomLevel::Excited, AtomLevel::Ground)
            .map(|t| (t, 1.0))
            .into_iter()
            .collect()
    })
}

/// `R_zi` with eigenvalues `±1/2`.
pub fn atom_inversion(basis: &Basis, i: usize) -> Array2<Complex64> {
    operator_matrix(basis, |s| {
        let v = match s.atoms[i] {
            AtomLevel::Ground => -0.5,
            AtomLevel::Excited => 0.5,
        };
        vec![(s.clone(), v)]
    })
}

/// The unitary `P|s> = |perm·s>`.
pub fn permutation_operator(basis: &Basis, perm: &Permutation) -> Result<Array2<Complex64>> {
    for s in basis {
        apply_permutation(s, perm)?;
    }
    Ok(operator_matrix(basis, |s| {
        vec![(apply_permutation(s, perm).expect("checked above"), 1.0)]
    }))
}

fn check_basis(params: &SystemParams, basis: &Basis) -> Result<()> {
    params.validate()?;
    match basis.iter().find(|s| s.n_cavities() != params.n_cavities) {
        Some(s) => Err(Error::invalid(format!(
            "{s} does not have {} cavities",
            params.n_cavities
        ))),
        None => Ok(()),
    }
}

/// `g Σ_i (R_i⁺ a_i + R_i⁻ a_i†)`.
pub fn atom_field_term(params: &SystemParams, basis: &Basis) -> Result<HamiltonianMatrix> {
    check_basis(params, basis)?;
    let g = params.g;
    let m = operator_matrix(basis, |s| {
        let mut out = Vec::new();
        for i in 0..s.n_cavities() {
            // R⁺ a: photon absorbed by a ground-state atom.
            if let Some((t, c)) = lower_photon(s, i) {
                if let Some(t) = flip_atom(&t, i, AtomLevel::Ground, AtomLevel::Excited) {
                    out.push((t, g * c));
                }
            }
            // R⁻ a†: excited atom emits into its own mode.
            if let Some(t) = flip_atom(s, i, AtomLevel::Excited, AtomLevel::Ground) {
                let (t, c) = raise_photon(&t, i);
                out.push((t, g * c));
            }
        }
        out
    });
    HamiltonianMatrix::new(m, BasisLabels::Product(basis.clone()))
}

/// `χ Σ_{edges} (a_i† a_j + a_j† a_i)`.
pub fn hopping_term(
    params: &SystemParams,
    topology: &RingTopology,
    basis: &Basis,
) -> Result<HamiltonianMatrix> {
    check_basis(params, basis)?;
    if topology.n_cavities() != params.n_cavities {
        return Err(Error::invalid(format!(
            "topology has {} cavities, system has {}",
            topology.n_cavities(),
            params.n_cavities
        )));
    }
    let chi = params.chi;
    let m = operator_matrix(basis, |s| {
        let mut out = Vec::new();
        for &(i, j) in topology.edges() {
            for (from, to) in [(i, j), (j, i)] {
                if let Some((t, c1)) = lower_photon(s, from) {
                    let (t, c2) = raise_photon(&t, to);
                    out.push((t, chi * c1 * c2));
                }
            }
        }
        out
    });
    HamiltonianMatrix::new(m, BasisLabels::Product(basis.clone()))
}

/// `H_I`: atom-field coupling plus hopping.
pub fn interaction(
    params: &SystemParams,
    topology: &RingTopology,
    basis: &Basis,
) -> Result<HamiltonianMatrix> {
    atom_field_term(params, basis)?.add(&hopping_term(params, topology, basis)?)
}

/// `H_0`, diagonal with entries `ω (n_ex(s) - n/2)`.
pub fn free_term(params: &SystemParams, basis: &Basis) -> Result<HamiltonianMatrix> {
    check_basis(params, basis)?;
    let offset = params.n_cavities as f64 / 2.0;
    let m = operator_matrix(basis, |s| {
        vec![(s.clone(), params.omega * (s.excitation_number() as f64 - offset))]
    });
    HamiltonianMatrix::new(m, BasisLabels::Product(basis.clone()))
}

/// `M_ab = <a|H|b>` over collective states expressed in `h`'s product basis.
pub fn restrict(h: &HamiltonianMatrix, collective: &[CollectiveState]) -> Result<HamiltonianMatrix> {
    let basis = match &h.labels {
        BasisLabels::Product(b) => b,
        _ => return Err(Error::invalid("restrict needs a matrix over product states")),
    };
    let d = h.dim();
    let k = collective.len();
    let mut vectors = Array2::<Complex64>::zeros((d, k));
    for (col, c) in collective.iter().enumerate() {
        for (s, a) in c.amplitudes() {
            let row = basis.index_of(s).ok_or_else(|| {
                Error::invalid(format!("{s} (in {c}) is not in the matrix basis"))
            })?;
            vectors[[row, col]] = *a;
        }
    }
    let adjoint = vectors.t().mapv(|z| z.conj());
    let m = adjoint.dot(&h.matrix).dot(&vectors);
    HamiltonianMatrix::new(m, BasisLabels::Collective(collective.to_vec()))
}
