// SPDX-License-Identifier: Apache-2.0

//! Truncated product Hilbert space of `n` cavities, each holding one
//! two-level atom and one bosonic mode.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative phase between the two members of a collective superposition.
///
/// Only `e^{iφ} = ±1` occurs, so the phase is stored as a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// φ = 0.
    #[default]
    Symmetric,
    /// φ = π.
    Antisymmetric,
}

impl Phase {
    /// Accepts 0 or ±π (to 1e-9); anything else is rejected.
    pub fn from_angle(phi: f64) -> Result<Self> {
        if phi.abs() < 1e-9 {
            Ok(Phase::Symmetric)
        } else if (phi.abs() - PI).abs() < 1e-9 {
            Ok(Phase::Antisymmetric)
        } else {
            Err(Error::invalid(format!("phi must be 0 or pi, got {phi}")))
        }
    }

    pub fn angle(self) -> f64 {
        match self {
            Phase::Symmetric => 0.0,
            Phase::Antisymmetric => PI,
        }
    }

    /// `e^{iφ}`, which is real here.
    pub fn sign(self) -> f64 {
        match self {
            Phase::Symmetric => 1.0,
            Phase::Antisymmetric => -1.0,
        }
    }
}

/// Physical constants of the cavity ring. Frequencies are angular, with ħ = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub n_cavities: usize,
    /// Maximum photon number kept per mode.
    pub fock_cutoff: u32,
    /// Atom-mode coupling.
    pub g: f64,
    /// Photon hopping between neighbouring cavities.
    pub chi: f64,
    /// Bare resonance shared by atoms and modes.
    pub omega: f64,
    /// Collective decay rate.
    pub gamma: f64,
    pub phi: Phase,
}

impl SystemParams {
    pub fn new(n_cavities: usize, fock_cutoff: u32, g: f64, chi: f64) -> Result<Self> {
        let params = SystemParams {
            n_cavities,
            fock_cutoff,
            g,
            chi,
            omega: 0.0,
            gamma: 0.0,
            phi: Phase::Symmetric,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_phase(mut self, phi: Phase) -> Self {
        self.phi = phi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_cavities < 2 {
            return Err(Error::invalid(format!(
                "n_cavities must be >= 2, got {}",
                self.n_cavities
            )));
        }
        for (name, value) in [
            ("g", self.g),
            ("chi", self.chi),
            ("omega", self.omega),
            ("gamma", self.gamma),
        ] {
            if !value.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite, got {value}")));
            }
        }
        if self.g < 0.0 {
            return Err(Error::invalid(format!("g must be >= 0, got {}", self.g)));
        }
        if self.gamma < 0.0 {
            return Err(Error::invalid(format!(
                "gamma must be >= 0, got {}",
                self.gamma
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AtomLevel {
    Ground,
    Excited,
}

impl AtomLevel {
    fn symbol(self) -> char {
        match self {
            AtomLevel::Ground => 'g',
            AtomLevel::Excited => 'e',
        }
    }
}

/// One distinguishable basis ket `|a_1,n_1>|a_2,n_2>...`.
///
/// The derived ordering is the canonical one: atoms before photons, cavity 1
/// most significant, ground before excited.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProductState {
    pub atoms: Vec<AtomLevel>,
    pub photons: Vec<u32>,
}

impl ProductState {
    pub fn new(atoms: Vec<AtomLevel>, photons: Vec<u32>) -> Result<Self> {
        if atoms.len() != photons.len() {
            return Err(Error::invalid(format!(
                "atoms ({}) and photons ({}) differ in length",
                atoms.len(),
                photons.len()
            )));
        }
        Ok(ProductState { atoms, photons })
    }

    /// All atoms in the ground state, all modes empty.
    pub fn vacuum(n_cavities: usize) -> Self {
        ProductState {
            atoms: vec![AtomLevel::Ground; n_cavities],
            photons: vec![0; n_cavities],
        }
    }

    /// Parses the `|e,0;g,1>` notation produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('|')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(|| Error::invalid(format!("not a ket: {text:?}")))?;
        let mut atoms = Vec::new();
        let mut photons = Vec::new();
        for cavity in inner.split(';') {
            let (level, count) = cavity
                .split_once(',')
                .ok_or_else(|| Error::invalid(format!("bad cavity entry {cavity:?}")))?;
            atoms.push(match level.trim() {
                "g" => AtomLevel::Ground,
                "e" => AtomLevel::Excited,
                other => return Err(Error::invalid(format!("bad atomic level {other:?}"))),
            });
            photons.push(
                count
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad photon number {count:?}")))?,
            );
        }
        ProductState::new(atoms, photons)
    }

    pub fn n_cavities(&self) -> usize {
        self.atoms.len()
    }

    /// Excited atoms plus photons.
    pub fn excitation_number(&self) -> u32 {
        let excited = self
            .atoms
            .iter()
            .filter(|&&a| a == AtomLevel::Excited)
            .count() as u32;
        excited + self.photons.iter().sum::<u32>()
    }
}

pub fn excitation_number(state: &ProductState) -> u32 {
    state.excitation_number()
}

impl fmt::Display for ProductState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (i, (a, n)) in self.atoms.iter().zip(&self.photons).enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{},{}", a.symbol(), n)?;
        }
        f.write_str(">")
    }
}

/// A canonically ordered list of product states.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    states: Vec<ProductState>,
    truncated: bool,
}

impl Basis {
    /// Sorts and deduplicates `states` into canonical order.
    pub fn from_states(mut states: Vec<ProductState>) -> Self {
        states.sort();
        states.dedup();
        Basis {
            states,
            truncated: false,
        }
    }

    pub fn states(&self) -> &[ProductState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Set when the Fock cutoff removed states that carry the requested
    /// excitation number.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn index_of(&self, state: &ProductState) -> Option<usize> {
        self.states.binary_search(state).ok()
    }

    pub fn get(&self, index: usize) -> Option<&ProductState> {
        self.states.get(index)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProductState> {
        self.states.iter()
    }
}

impl<'a> IntoIterator for &'a Basis {
    type Item = &'a ProductState;
    type IntoIter = std::slice::Iter<'a, ProductState>;

    fn into_iter(self) -> Self::IntoIter {
        self.states.iter()
    }
}

/// Every product state with exactly `n_ex` excitations and at most
/// `fock_cutoff` photons per mode, in canonical order.
///
/// A cutoff below `n_ex` is allowed; the result is then flagged as truncated.
pub fn enumerate_basis(params: &SystemParams, n_ex: u32) -> Result<Basis> {
    params.validate()?;
    let n = params.n_cavities;
    let cutoff = params.fock_cutoff;
    let capacity = n as u64 * (1 + cutoff as u64);
    if n_ex as u64 > capacity {
        return Err(Error::invalid(format!(
            "{n_ex} excitations do not fit in {n} cavities with cutoff {cutoff}"
        )));
    }

    let mut states = Vec::new();
    for mask in 0..(1u64 << n) {
        let atoms: Vec<AtomLevel> = (0..n)
            .map(|i| {
                if mask >> (n - 1 - i) & 1 == 1 {
                    AtomLevel::Excited
                } else {
                    AtomLevel::Ground
                }
            })
            .collect();
        let excited = mask.count_ones();
        if excited > n_ex {
            continue;
        }
        let mut photons = vec![0u32; n];
        distribute(n_ex - excited, cutoff, 0, &mut photons, &mut |p| {
            states.push(ProductState {
                atoms: atoms.clone(),
                photons: p.to_vec(),
            })
        });
    }
    let mut basis = Basis::from_states(states);
    basis.truncated = cutoff < n_ex;
    Ok(basis)
}

/// All states with at most `fock_cutoff` photons per mode, any excitation
/// number. Used for operators that change the excitation number.
pub fn full_basis(params: &SystemParams) -> Result<Basis> {
    params.validate()?;
    let max_ex = params.n_cavities as u32 * (1 + params.fock_cutoff);
    let mut states = Vec::new();
    for n_ex in 0..=max_ex {
        states.extend(enumerate_basis(params, n_ex)?.states);
    }
    Ok(Basis::from_states(states))
}

fn distribute(
    remaining: u32,
    cutoff: u32,
    cavity: usize,
    photons: &mut [u32],
    emit: &mut dyn FnMut(&[u32]),
) {
    if cavity == photons.len() {
        if remaining == 0 {
            emit(photons);
        }
        return;
    }
    for k in 0..=remaining.min(cutoff) {
        photons[cavity] = k;
        distribute(remaining - k, cutoff, cavity + 1, photons, emit);
    }
    photons[cavity] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, cutoff: u32) -> SystemParams {
        SystemParams::new(n, cutoff, 1.0, 1.0).unwrap()
    }

    fn ket(s: &str) -> ProductState {
        ProductState::parse(s).unwrap()
    }

    #[test]
    fn basis_sizes_match_counted_states() {
        assert_eq!(enumerate_basis(&params(2, 2), 1).unwrap().len(), 4);
        assert_eq!(enumerate_basis(&params(2, 2), 2).unwrap().len(), 8);
        assert_eq!(enumerate_basis(&params(3, 3), 3).unwrap().len(), 38);
        assert_eq!(enumerate_basis(&params(3, 2), 2).unwrap().len(), 18);
    }

    #[test]
    fn zero_excitations_is_vacuum_only() {
        for cutoff in 0..3 {
            let basis = enumerate_basis(&params(4, cutoff), 0).unwrap();
            assert_eq!(basis.states(), &[ProductState::vacuum(4)]);
        }
    }

    #[test]
    fn excitation_numbers() {
        assert_eq!(ket("|e,0;g,0>").excitation_number(), 1);
        assert_eq!(ket("|g,2;g,0>").excitation_number(), 2);
        assert_eq!(ProductState::vacuum(3).excitation_number(), 0);
    }

    #[test]
    fn small_cutoff_is_flagged() {
        let basis = enumerate_basis(&params(2, 1), 2).unwrap();
        assert!(basis.is_truncated());
        // |g,2;g,0> and |g,0;g,2> are gone.
        assert_eq!(basis.len(), 6);
        assert!(!enumerate_basis(&params(2, 2), 2).unwrap().is_truncated());
    }

    #[test]
    fn too_many_excitations_rejected() {
        assert!(enumerate_basis(&params(2, 0), 3).is_err());
    }

    #[test]
    fn canonical_order_puts_atoms_first() {
        let basis = enumerate_basis(&params(2, 1), 1).unwrap();
        let labels: Vec<String> = basis.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            labels,
            ["|g,0;g,1>", "|g,1;g,0>", "|g,0;e,0>", "|e,0;g,0>"]
        );
        for (i, s) in basis.iter().enumerate() {
            assert_eq!(basis.index_of(s), Some(i));
        }
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(SystemParams::new(1, 1, 1.0, 0.0).is_err());
        assert!(SystemParams::new(2, 1, -1.0, 0.0).is_err());
        assert!(Phase::from_angle(1.0).is_err());
        assert_eq!(Phase::from_angle(-PI).unwrap(), Phase::Antisymmetric);
    }

    #[test]
    fn ket_parse_round_trip() {
        let s = ket("|e,1;g,0;g,2>");
        assert_eq!(ProductState::parse(&s.to_string()).unwrap(), s);
        assert!(ProductState::parse("e,1").is_err());
    }
}
