// SPDX-License-Identifier: Apache-2.0

//! Geometric symmetry of the cavity ring: permutation groups, orbits of
//! product states, orbit counting and collective states.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{enumerate_basis, Basis, Phase, ProductState, SystemParams};

/// A bijection on cavity labels; `image[i]` is where cavity `i` is sent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &j in &image {
            if j >= image.len() || seen[j] {
                return Err(Error::invalid(format!("{image:?} is not a permutation")));
            }
            seen[j] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `i -> i + k (mod n)`.
    pub fn rotation(n: usize, k: usize) -> Self {
        Permutation((0..n).map(|i| (i + k) % n).collect())
    }

    /// `i -> k - i (mod n)`.
    pub fn reflection(n: usize, k: usize) -> Self {
        Permutation((0..n).map(|i| (k + n - i % n) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// Cycle lengths, including fixed points.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut visited = vec![false; self.0.len()];
        let mut lengths = Vec::new();
        for start in 0..self.0.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.0[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// Rotations of the ring.
    Cyclic,
    /// Rotations and reflections.
    #[default]
    Dihedral,
}

impl std::str::FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(GroupKind::Cyclic),
            "dihedral" => Ok(GroupKind::Dihedral),
            other => Err(Error::invalid(format!("unknown group kind {other:?}"))),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Cyclic => "cyclic",
            GroupKind::Dihedral => "dihedral",
        })
    }
}

/// Symmetry group of a regular `n`-gon of cavities, as cavity permutations.
///
/// Elements are deduplicated and sorted, so for `n = 2` both kinds reduce to
/// `{identity, swap}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    kind: GroupKind,
    n: usize,
    elements: Vec<Permutation>,
}

impl SymmetryGroup {
    pub fn new(kind: GroupKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ring size must be positive"));
        }
        let mut elements = BTreeSet::new();
        for k in 0..n {
            elements.insert(Permutation::rotation(n, k));
            if kind == GroupKind::Dihedral {
                elements.insert(Permutation::reflection(n, k));
            }
        }
        Ok(SymmetryGroup {
            kind,
            n,
            elements: elements.into_iter().collect(),
        })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn ring_size(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Exhaustive check of the group axioms over the composition table.
    pub fn is_closed(&self) -> bool {
        let set: BTreeSet<&Permutation> = self.elements.iter().collect();
        set.contains(&Permutation::identity(self.n))
            && self.elements.iter().all(|a| {
                set.contains(&a.inverse())
                    && self.elements.iter().all(|b| set.contains(&a.compose(b)))
            })
    }
}

/// Relabels cavities: the content of cavity `i` moves to cavity `perm[i]`.
pub fn apply_permutation(state: &ProductState, perm: &Permutation) -> Result<ProductState> {
    let n = state.n_cavities();
    if perm.len() != n {
        return Err(Error::invalid(format!(
            "permutation acts on {} cavities, state has {n}",
            perm.len()
        )));
    }
    let mut atoms = state.atoms.clone();
    let mut photons = state.photons.clone();
    for (i, &j) in perm.image().iter().enumerate() {
        atoms[j] = state.atoms[i];
        photons[j] = state.photons[i];
    }
    Ok(ProductState { atoms, photons })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Smallest member in canonical order.
    pub representative: ProductState,
    /// Distinct members in canonical order; the first is the representative.
    pub members: Vec<ProductState>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partitions `basis` into group orbits, ordered by representative.
pub fn orbits(basis: &Basis, group: &SymmetryGroup) -> Result<Vec<Orbit>> {
    let mut assigned = vec![false; basis.len()];
    let mut out = Vec::new();
    for (i, state) in basis.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut members = BTreeSet::new();
        for g in group.elements() {
            let image = apply_permutation(state, g)?;
            let j = basis.index_of(&image).ok_or_else(|| {
                Error::invalid(format!(
                    "basis is not closed under the group: {image} (image of {state}) is missing"
                ))
            })?;
            assigned[j] = true;
            members.insert(image);
        }
        let members: Vec<ProductState> = members.into_iter().collect();
        out.push(Orbit {
            representative: members[0].clone(),
            members,
        });
    }
    Ok(out)
}

/// Number of collective states for `n_ex` excitations on `n_cavities`,
/// counted by orbit enumeration with the Fock cutoff set to `n_ex`.
pub fn count_collective_states(n_cavities: usize, n_ex: u32, kind: GroupKind) -> Result<usize> {
    let params = SystemParams::new(n_cavities, n_ex, 0.0, 0.0)?;
    let basis = enumerate_basis(&params, n_ex)?;
    let group = SymmetryGroup::new(kind, n_cavities)?;
    Ok(orbits(&basis, &group)?.len())
}

/// Orbit count from the group average of fixed-point counts.
///
/// A state is fixed by `g` iff it is constant along every cycle of `g`, so
/// `|Fix(g)|` is the `x^n_ex` coefficient of `Π_cycles f(x^len)` with
/// `f(x) = (1 + x)(1 + x + ... + x^cutoff)` the single-cavity generating
/// function. No states are enumerated.
pub fn burnside_count(n_cavities: usize, n_ex: u32, fock_cutoff: u32, kind: GroupKind) -> Result<usize> {
    let group = SymmetryGroup::new(kind, n_cavities)?;
    let top = n_ex as usize;
    let mut total: u128 = 0;
    for g in group.elements() {
        let mut poly = vec![0u128; top + 1];
        poly[0] = 1;
        for len in g.cycle_lengths() {
            let mut factor = vec![0u128; top + 1];
            for atom in 0..=1usize {
                for photons in 0..=fock_cutoff as usize {
                    let degree = (atom + photons) * len;
                    if degree <= top {
                        factor[degree] += 1;
                    }
                }
            }
            poly = truncated_product(&poly, &factor);
        }
        total += poly[top];
    }
    let order = group.order() as u128;
    if !total.is_multiple_of(order) {
        return Err(Error::invalid(format!(
            "fixed-point total {total} not divisible by group order {order}"
        )));
    }
    Ok((total / order) as usize)
}

fn truncated_product(a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// A normalized superposition of the members of one orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveState {
    amplitudes: BTreeMap<ProductState, Complex64>,
    phi: Phase,
    n_ex: u32,
}

impl CollectiveState {
    pub fn from_amplitudes(
        amplitudes: BTreeMap<ProductState, Complex64>,
        phi: Phase,
    ) -> Result<Self> {
        let mut numbers = amplitudes.keys().map(ProductState::excitation_number);
        let n_ex = numbers
            .next()
            .ok_or_else(|| Error::invalid("collective state needs at least one member"))?;
        if numbers.any(|m| m != n_ex) {
            return Err(Error::invalid("members carry different excitation numbers"));
        }
        Ok(CollectiveState {
            amplitudes,
            phi,
            n_ex,
        })
    }

    pub fn amplitudes(&self) -> &BTreeMap<ProductState, Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, state: &ProductState) -> Complex64 {
        self.amplitudes.get(state).copied().unwrap_or_default()
    }

    pub fn phi(&self) -> Phase {
        self.phi
    }

    pub fn n_ex(&self) -> u32 {
        self.n_ex
    }

    /// First member in canonical order.
    pub fn representative(&self) -> &ProductState {
        self.amplitudes.keys().next().expect("non-empty by construction")
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(Complex64::norm_sqr).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &CollectiveState) -> Complex64 {
        self.amplitudes
            .iter()
            .map(|(s, a)| a.conj() * other.amplitude(s))
            .sum()
    }

    /// Applies a cavity permutation to every member.
    pub fn permuted(&self, perm: &Permutation) -> Result<CollectiveState> {
        let mut amplitudes = BTreeMap::new();
        for (s, a) in &self.amplitudes {
            amplitudes.insert(apply_permutation(s, perm)?, *a);
        }
        Ok(CollectiveState {
            amplitudes,
            phi: self.phi,
            n_ex: self.n_ex,
        })
    }
}

impl fmt::Display for CollectiveState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phi {
            Phase::Symmetric => write!(f, "S{}", self.representative()),
            Phase::Antisymmetric => write!(f, "A{}", self.representative()),
        }
    }
}

/// Builds the collective state of `orbit` for phase `phi`.
///
/// For φ = 0 this is the equal-weight normalized sum. For φ = π it exists
/// only for two-member orbits: the representative gets `+1/√2`, the other
/// member `-1/√2`. Otherwise `None`.
pub fn build_collective_state(orbit: &Orbit, phi: Phase) -> Option<CollectiveState> {
    let n_ex = orbit.representative.excitation_number();
    let amplitudes: BTreeMap<ProductState, Complex64> = match phi {
        Phase::Symmetric => {
            let a = Complex64::new(1.0 / (orbit.len() as f64).sqrt(), 0.0);
            orbit.members.iter().map(|s| (s.clone(), a)).collect()
        }
        Phase::Antisymmetric if orbit.len() == 2 => {
            let a = std::f64::consts::FRAC_1_SQRT_2;
            [
                (orbit.members[0].clone(), Complex64::new(a, 0.0)),
                (orbit.members[1].clone(), Complex64::new(-a, 0.0)),
            ]
            .into_iter()
            .collect()
        }
        Phase::Antisymmetric => return None,
    };
    Some(CollectiveState {
        amplitudes,
        phi,
        n_ex,
    })
}

/// One collective state per supported orbit, in canonical orbit order.
pub fn collective_basis(
    params: &SystemParams,
    n_ex: u32,
    group: &SymmetryGroup,
    phi: Phase,
) -> Result<Vec<CollectiveState>> {
    if group.ring_size() != params.n_cavities {
        return Err(Error::invalid(format!(
            "group acts on {} cavities, system has {}",
            group.ring_size(),
            params.n_cavities
        )));
    }
    let basis = enumerate_basis(params, n_ex)?;
    Ok(orbits(&basis, group)?
        .iter()
        .filter_map(|o| build_collective_state(o, phi))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket(s: &str) -> ProductState {
        ProductState::parse(s).unwrap()
    }

    fn params(n: usize, cutoff: u32) -> SystemParams {
        SystemParams::new(n, cutoff, 1.0, 1.0).unwrap()
    }

    #[test]
    fn permutation_examples() {
        let swap = Permutation::rotation(2, 1);
        assert_eq!(
            apply_permutation(&ket("|e,0;g,0>"), &swap).unwrap(),
            ket("|g,0;e,0>")
        );
        let s = ket("|e,1;g,0;e,2>");
        assert_eq!(apply_permutation(&s, &Permutation::identity(3)).unwrap(), s);
        assert_eq!(
            apply_permutation(&ket("|g,1;g,0;g,0>"), &Permutation::rotation(3, 1)).unwrap(),
            ket("|g,0;g,1;g,0>")
        );
        assert!(apply_permutation(&s, &swap).is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn groups_are_closed() {
        for n in 2..=6 {
            for kind in [GroupKind::Cyclic, GroupKind::Dihedral] {
                let g = SymmetryGroup::new(kind, n).unwrap();
                assert!(g.is_closed(), "{kind} {n}");
                let expected = match (kind, n) {
                    (_, 2) => 2,
                    (GroupKind::Cyclic, n) => n,
                    (GroupKind::Dihedral, n) => 2 * n,
                };
                assert_eq!(g.order(), expected);
            }
        }
        assert_eq!(
            SymmetryGroup::new(GroupKind::Cyclic, 2).unwrap(),
            SymmetryGroup {
                kind: GroupKind::Cyclic,
                ..SymmetryGroup::new(GroupKind::Dihedral, 2).unwrap()
            }
        );
    }

    #[test]
    fn orbit_examples() {
        let d2 = SymmetryGroup::new(GroupKind::Dihedral, 2).unwrap();
        let basis = enumerate_basis(&params(2, 1), 1).unwrap();
        assert_eq!(orbits(&basis, &d2).unwrap().len(), 2);

        let d3 = SymmetryGroup::new(GroupKind::Dihedral, 3).unwrap();
        let basis = enumerate_basis(&params(3, 2), 2).unwrap();
        assert_eq!(basis.len(), 18);
        let os = orbits(&basis, &d3).unwrap();
        assert_eq!(os.len(), 5);
        assert_eq!(os.iter().map(Orbit::len).sum::<usize>(), 18);

        let vac = Basis::from_states(vec![ProductState::vacuum(3)]);
        assert_eq!(orbits(&vac, &d3).unwrap().len(), 1);
    }

    #[test]
    fn open_basis_names_missing_state() {
        let d2 = SymmetryGroup::new(GroupKind::Dihedral, 2).unwrap();
        let basis = Basis::from_states(vec![ket("|e,0;g,0>")]);
        let err = orbits(&basis, &d2).unwrap_err().to_string();
        assert!(err.contains("|g,0;e,0>"), "{err}");
    }

    #[test]
    fn counting_law_for_few_excitations() {
        let d = GroupKind::Dihedral;
        assert_eq!(count_collective_states(2, 1, d).unwrap(), 2);
        assert_eq!(count_collective_states(2, 2, d).unwrap(), 5);
        assert_eq!(count_collective_states(3, 1, d).unwrap(), 2);
        assert_eq!(count_collective_states(3, 2, d).unwrap(), 5);
        assert_eq!(count_collective_states(3, 3, d).unwrap(), 10);
        // Rotations alone keep left and right neighbours apart.
        assert_eq!(count_collective_states(3, 2, GroupKind::Cyclic).unwrap(), 6);
    }

    #[test]
    fn burnside_agrees_with_enumeration() {
        for n in 2..=4 {
            for n_ex in 0..=4 {
                for kind in [GroupKind::Cyclic, GroupKind::Dihedral] {
                    assert_eq!(
                        burnside_count(n, n_ex, n_ex, kind).unwrap(),
                        count_collective_states(n, n_ex, kind).unwrap(),
                        "n={n} n_ex={n_ex} {kind}"
                    );
                }
            }
        }
    }

    #[test]
    fn collective_state_examples() {
        let d2 = SymmetryGroup::new(GroupKind::Dihedral, 2).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;

        let states = collective_basis(&params(2, 1), 1, &d2, Phase::Symmetric).unwrap();
        assert_eq!(states.len(), 2);
        let atomic = &states[1];
        assert!((atomic.amplitude(&ket("|e,0;g,0>")).re - r).abs() < 1e-15);
        assert!((atomic.amplitude(&ket("|g,0;e,0>")).re - r).abs() < 1e-15);

        let d3 = SymmetryGroup::new(GroupKind::Dihedral, 3).unwrap();
        let basis = enumerate_basis(&params(3, 1), 1).unwrap();
        let orbit = orbits(&basis, &d3)
            .unwrap()
            .into_iter()
            .find(|o| o.members.contains(&ket("|e,0;g,0;g,0>")))
            .unwrap();
        let psi = build_collective_state(&orbit, Phase::Symmetric).unwrap();
        assert_eq!(psi.amplitudes().len(), 3);
        for a in psi.amplitudes().values() {
            assert!((a.re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }

        let single = Orbit {
            representative: ket("|e,0;e,0>"),
            members: vec![ket("|e,0;e,0>")],
        };
        let psi = build_collective_state(&single, Phase::Symmetric).unwrap();
        assert_eq!(psi.amplitude(&ket("|e,0;e,0>")), Complex64::new(1.0, 0.0));
        assert!(build_collective_state(&single, Phase::Antisymmetric).is_none());
    }

    #[test]
    fn antisymmetric_pairs() {
        let d2 = SymmetryGroup::new(GroupKind::Dihedral, 2).unwrap();
        let states = collective_basis(&params(2, 2), 2, &d2, Phase::Antisymmetric).unwrap();
        // |e,0;e,0> and |g,1;g,1> are their own mirror images.
        assert_eq!(states.len(), 3);
        for s in &states {
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
            let swapped = s.permuted(&Permutation::rotation(2, 1)).unwrap();
            assert!((s.inner(&swapped).re + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuum_collective_basis() {
        for n in 2..=5 {
            let g = SymmetryGroup::new(GroupKind::Dihedral, n).unwrap();
            let states = collective_basis(&params(n, 0), 0, &g, Phase::Symmetric).unwrap();
            assert_eq!(states.len(), 1);
            assert_eq!(states[0].representative(), &ProductState::vacuum(n));
        }
    }
}
