//! Fermionic ladder operators and their Jordan-Wigner and Bravyi-Kitaev
//! images; the Fermi-Hubbard model.
//!
//! Mode ordering is site-major, spin-minor: mode `2 * site + spin` with
//! spin up = 0 and down = 1.

use std::collections::BTreeSet;

use num_complex::Complex64;

use super::{PauliSum, PauliSumHamiltonian, DEFAULT_DROP_THRESHOLD};
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FermionMapping {
    JordanWigner,
    BravyiKitaev,
}

/// `coefficient · Π factors`, each factor `(mode, dagger)`, in written order.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderTerm {
    pub coefficient: f64,
    pub factors: Vec<(usize, bool)>,
}

impl LadderTerm {
    pub fn new(coefficient: f64, factors: Vec<(usize, bool)>) -> Self {
        Self { coefficient, factors }
    }

    /// `n_mode = a†_mode a_mode`.
    pub fn number(mode: usize) -> Self {
        Self::new(1.0, vec![(mode, true), (mode, false)])
    }

    /// `c · a†_i a_j`.
    pub fn hopping(coefficient: f64, i: usize, j: usize) -> Self {
        Self::new(coefficient, vec![(i, true), (j, false)])
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Fenwick-tree update set of `index` (0-based) in a register of `n_modes`:
/// the qubits whose stored parity includes this mode.
pub fn bk_update_set(index: usize, n_modes: usize) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    let mut k = index + 1;
    while k <= n_modes {
        set.insert(k - 1);
        k += k & k.wrapping_neg();
    }
    set
}

/// Qubits whose parity gives the occupation of `index`.
pub fn bk_occupation_set(index: usize) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    let mut k = index + 1;
    set.insert(k - 1);
    let parent = k & (k - 1);
    k -= 1;
    while k != parent {
        set.insert(k - 1);
        k &= k - 1;
    }
    set
}

/// Qubits whose parity gives the parity of modes `0..=index`.
pub fn bk_parity_set(index: Option<usize>) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    let Some(index) = index else { return set };
    let mut k = index + 1;
    while k > 0 {
        set.insert(k - 1);
        k &= k - 1;
    }
    set
}

fn string(n: usize, factors: impl IntoIterator<Item = (usize, PauliKind)>) -> PauliString {
    PauliString::from_factors(n, factors)
}

/// Qubit image of `a_mode` (or `a†_mode` when `dagger`).
pub fn ladder_image(mode: usize, dagger: bool, n_modes: usize, mapping: FermionMapping) -> Result<PauliSum> {
    if mode >= n_modes {
        return Err(Error::QubitIndex { index: mode, n_qubits: n_modes });
    }
    // a = (c + i d)/2 and a† = (c − i d)/2 for Majoranas c, d.
    let (c_part, d_part) = match mapping {
        FermionMapping::JordanWigner => {
            let zs = (0..mode).map(|k| (k, PauliKind::Z));
            (
                string(n_modes, zs.clone().chain([(mode, PauliKind::X)])),
                string(n_modes, zs.chain([(mode, PauliKind::Y)])),
            )
        }
        FermionMapping::BravyiKitaev => {
            let update = bk_update_set(mode, n_modes);
            let parity = bk_parity_set(mode.checked_sub(1));
            let occupation = bk_occupation_set(mode);
            let c_str = string(
                n_modes,
                update.iter().map(|&k| (k, PauliKind::X)).chain(parity.iter().map(|&k| (k, PauliKind::Z))),
            );
            let rest: BTreeSet<usize> = parity.symmetric_difference(&occupation).copied().collect();
            let d_str = string(
                n_modes,
                update
                    .iter()
                    .filter(|&&k| k != mode)
                    .map(|&k| (k, PauliKind::X))
                    .chain(rest.iter().filter(|&&k| k != mode).map(|&k| (k, PauliKind::Z)))
                    .chain([(mode, PauliKind::Y)]),
            );
            (c_str, d_str)
        }
    };
    let mut s = PauliSum::term(c(0.5, 0.0), c_part);
    s.add_term(c(0.0, if dagger { -0.5 } else { 0.5 }), d_part);
    Ok(s)
}

fn map_term(term: &LadderTerm, n_modes: usize, mapping: FermionMapping) -> Result<PauliSum> {
    let mut acc = PauliSum::term(c(term.coefficient, 0.0), PauliString::identity(n_modes));
    for &(mode, dagger) in &term.factors {
        acc = acc.mul(&ladder_image(mode, dagger, n_modes, mapping)?);
    }
    acc.prune(0.0);
    Ok(acc)
}

pub fn jordan_wigner(term: &LadderTerm, n_modes: usize) -> Result<PauliSum> {
    map_term(term, n_modes, FermionMapping::JordanWigner)
}

pub fn bravyi_kitaev(term: &LadderTerm, n_modes: usize) -> Result<PauliSum> {
    map_term(term, n_modes, FermionMapping::BravyiKitaev)
}

/// `-t Σ_{<ij>,σ} (a†_iσ a_jσ + h.c.) + U Σ_i n_i↑ n_i↓` on a ring (or open
/// chain). Two sites share a single bond either way.
pub fn fermi_hubbard(n_sites: usize, t: f64, u: f64, mapping: FermionMapping, periodic: bool) -> Result<PauliSumHamiltonian> {
    if n_sites < 2 {
        return Err(Error::InvalidParameter(format!("Fermi-Hubbard needs at least 2 sites, got {n_sites}")));
    }
    let n_modes = 2 * n_sites;
    let mut bonds: Vec<(usize, usize)> = (0..n_sites - 1).map(|i| (i, i + 1)).collect();
    if periodic && n_sites > 2 {
        bonds.push((n_sites - 1, 0));
    }
    let mut h = PauliSum::zero(n_modes);
    for &(i, j) in &bonds {
        for spin in 0..2 {
            let (a, b) = (2 * i + spin, 2 * j + spin);
            h.add_assign(&map_term(&LadderTerm::hopping(-t, a, b), n_modes, mapping)?);
            h.add_assign(&map_term(&LadderTerm::hopping(-t, b, a), n_modes, mapping)?);
        }
    }
    if u != 0.0 {
        for i in 0..n_sites {
            let (up, dn) = (2 * i, 2 * i + 1);
            let term = LadderTerm::new(u, vec![(up, true), (up, false), (dn, true), (dn, false)]);
            h.add_assign(&map_term(&term, n_modes, mapping)?);
        }
    }
    h.into_hamiltonian(DEFAULT_DROP_THRESHOLD)
}
