#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use pfg_core::frame::{CliffordGate, SignedFrame, TqeGate};
use pfg_core::ham::PauliSumHamiltonian;
use pfg_core::pauli::{parse_pauli, PauliKind, PauliString};
use rand::Rng;

pub type CMat = DMatrix<Complex64>;

pub const KINDS: [PauliKind; 3] = [PauliKind::X, PauliKind::Y, PauliKind::Z];

pub fn ps(s: &str) -> PauliString {
    parse_pauli(s, None).unwrap().into_pauli()
}

pub fn ham(n: usize, terms: &[(f64, &str)]) -> PauliSumHamiltonian {
    PauliSumHamiltonian::new(n, terms.iter().map(|(c, s)| (*c, parse_pauli(s, Some(n)).unwrap().into_pauli())).collect())
        .unwrap()
}

pub fn worked_example() -> PauliSumHamiltonian {
    ham(4, &[(0.1, "ZZII"), (0.2, "IZZI"), (0.3, "IIZZ"), (0.4, "ZIIZ"), (0.5, "ZZZZ")])
}

pub fn random_pauli(rng: &mut impl Rng, n: usize) -> PauliString {
    PauliString::from_factors(n, (0..n).map(|q| (q, PauliKind::from_bits(rng.random(), rng.random()))))
}

pub fn random_nonidentity(rng: &mut impl Rng, n: usize) -> PauliString {
    loop {
        let p = random_pauli(rng, n);
        if !p.is_identity() {
            return p;
        }
    }
}

fn other_qubit(rng: &mut impl Rng, n: usize, q: usize) -> usize {
    let r = rng.random_range(0..n - 1);
    if r >= q {
        r + 1
    } else {
        r
    }
}

pub fn random_tqe(rng: &mut impl Rng, n: usize) -> TqeGate {
    let q = rng.random_range(0..n);
    let r = other_qubit(rng, n, q);
    TqeGate::new(q, r, KINDS[rng.random_range(0..3)], KINDS[rng.random_range(0..3)]).unwrap()
}

/// Any generator, including SWAP and single-qubit Paulis.
pub fn random_gate(rng: &mut impl Rng, n: usize) -> CliffordGate {
    let q = rng.random_range(0..n);
    let pick = if n > 1 { rng.random_range(0..7) } else { rng.random_range(0..4) };
    match pick {
        0 => CliffordGate::H(q),
        1 => CliffordGate::P(q),
        2 => CliffordGate::Pdg(q),
        3 => CliffordGate::Pauli(KINDS[rng.random_range(0..3)], q),
        4 => CliffordGate::Swap(q, other_qubit(rng, n, q)),
        _ => CliffordGate::Tqe(random_tqe(rng, n)),
    }
}

pub fn random_gates(rng: &mut impl Rng, n: usize, len: usize) -> Vec<CliffordGate> {
    (0..len).map(|_| random_gate(rng, n)).collect()
}

pub fn random_frame(rng: &mut impl Rng, n: usize, len: usize) -> SignedFrame {
    let mut f = SignedFrame::origin(n);
    f.backward_apply_all(&random_gates(rng, n, len)).unwrap();
    f
}

pub fn random_hamiltonian(rng: &mut impl Rng, n: usize, max_terms: usize) -> PauliSumHamiltonian {
    let k = rng.random_range(1..=max_terms);
    let terms = (0..k).map(|_| (rng.random_range(-1.0..1.0), random_nonidentity(rng, n))).collect();
    PauliSumHamiltonian::new(n, terms).unwrap()
}

/// `|Tr(A†B)| / dim`, one exactly when `B` is a phase times `A` for unitaries.
pub fn overlap(a: &CMat, b: &CMat) -> f64 {
    (a.adjoint() * b).trace().norm() / a.nrows() as f64
}

pub mod oracles;
