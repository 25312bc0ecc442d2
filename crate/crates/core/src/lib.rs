// SPDX-License-Identifier: Apache-2.0

//! Collective (symmetry-reduced) excitations of two-level atoms and cavity
//! photons in rings of coupled cavities.
//!
//! The crate is organised bottom-up:
//!
//! - [`hilbert`]: truncated product basis of `n` atom + mode cavities.
//! - [`symmetry`]: cyclic/dihedral ring groups, orbits, Burnside counting and
//!   the collective (indistinguishable-excitation) states.
//! - [`hamiltonian`]: free and interaction Hamiltonians as dense Hermitian
//!   matrices, and their restriction to a collective basis.
//! - [`spectra`]: a Jacobi eigensolver used as the numerical oracle, the
//!   closed-form dressed-state formulas, and comparison reports.
//! - [`dynamics`]: the damped two-cavity single-excitation model (moment
//!   equations, matrix-exponential solution, density-matrix generators,
//!   entropy).
//! - [`cli`]: the command-line front end (`count`, `spectrum`, `evolve`,
//!   `sweep`, `compare`).

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod hamiltonian;
pub mod hilbert;
pub mod spectra;
pub mod symmetry;

pub use error::{Error, Result};
pub use hilbert::{AtomLevel, Basis, Phase, ProductState, SystemParams};
pub use symmetry::{CollectiveState, GroupKind, Orbit, SymmetryGroup};

pub use num_complex::Complex64;
