//! Clifford gates, the nine two-qubit entangling (TQE) gates, and their
//! conjugation action on Pauli operators.
//!
//! `TQE(u, v)` on qubits `i < j` is the Hermitian involution
//! `(I + u_i + v_j - u_i v_j) / 2`, i.e. "controlled on `u_i`, apply `v_j`".
//! `CX_ij = TQE(Z, X)`, `CZ_ij = TQE(Z, Z)`. Row labels `A/B/C` name the type
//! on the lower qubit (`X/Y/Z`), the column label the type on the upper one.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliString, SignedPauli};

/// One of the nine TQE gates on an ordered qubit pair.
///
/// The derived ordering, `(qubit_i, qubit_j, type_i, type_j)` with
/// `X < Y < Z`, is the deterministic tie-break used by the synthesizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TqeGate {
    pub qubit_i: usize,
    pub qubit_j: usize,
    pub type_i: PauliKind,
    pub type_j: PauliKind,
}

impl TqeGate {
    /// Normalizes so that `qubit_i < qubit_j`; the gate is symmetric under
    /// exchanging both qubits and types.
    pub fn new(qubit_a: usize, qubit_b: usize, type_a: PauliKind, type_b: PauliKind) -> Result<Self> {
        if qubit_a == qubit_b {
            return Err(Error::SameQubit(qubit_a));
        }
        if type_a == PauliKind::I || type_b == PauliKind::I {
            return Err(Error::InvalidParameter("TQE types must be X, Y or Z".into()));
        }
        Ok(if qubit_a < qubit_b {
            Self { qubit_i: qubit_a, qubit_j: qubit_b, type_i: type_a, type_j: type_b }
        } else {
            Self { qubit_i: qubit_b, qubit_j: qubit_a, type_i: type_b, type_j: type_a }
        })
    }

    /// Controlled-X with the given control and target.
    pub fn cx(control: usize, target: usize) -> Result<Self> {
        Self::new(control, target, PauliKind::Z, PauliKind::X)
    }

    pub fn cz(a: usize, b: usize) -> Result<Self> {
        Self::new(a, b, PauliKind::Z, PauliKind::Z)
    }

    /// Index 0..9 into the type grid, row-major over `(type_i, type_j)`.
    #[inline]
    pub fn type_index(&self) -> usize {
        type_index(self.type_i, self.type_j)
    }

    /// Grid name such as `"CX"` or `"BY"`.
    pub fn name(&self) -> &'static str {
        TQE_NAMES[self.type_index()]
    }

    pub fn from_name(name: &str, qubit_a: usize, qubit_b: usize) -> Result<Self> {
        let idx = TQE_NAMES
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown TQE gate {name:?}")))?;
        let (ta, tb) = types_of_index(idx);
        Self::new(qubit_a, qubit_b, ta, tb)
    }
}

pub const TQE_NAMES: [&str; 9] = ["AX", "AY", "AZ", "BX", "BY", "BZ", "CX", "CY", "CZ"];

#[inline]
fn kind_index(k: PauliKind) -> usize {
    match k {
        PauliKind::X => 0,
        PauliKind::Y => 1,
        PauliKind::Z => 2,
        PauliKind::I => panic!("identity has no TQE type"),
    }
}

#[inline]
pub(crate) fn type_index(ti: PauliKind, tj: PauliKind) -> usize {
    kind_index(ti) * 3 + kind_index(tj)
}

pub(crate) fn types_of_index(idx: usize) -> (PauliKind, PauliKind) {
    (PauliKind::NON_IDENTITY[idx / 3], PauliKind::NON_IDENTITY[idx % 3])
}

/// The Clifford generators used throughout: `H`, `P = diag(1, i)`, `P†`,
/// single-qubit Paulis, `SWAP` and the TQE family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    P(usize),
    Pdg(usize),
    Pauli(PauliKind, usize),
    Swap(usize, usize),
    Tqe(TqeGate),
}

impl CliffordGate {
    pub fn cx(control: usize, target: usize) -> Result<Self> {
        Ok(CliffordGate::Tqe(TqeGate::cx(control, target)?))
    }

    pub fn cz(a: usize, b: usize) -> Result<Self> {
        Ok(CliffordGate::Tqe(TqeGate::cz(a, b)?))
    }

    pub fn swap(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::SameQubit(a));
        }
        Ok(CliffordGate::Swap(a, b))
    }

    /// Gate `g'` with `g' g` equal to the identity up to phase.
    pub fn inverse(&self) -> CliffordGate {
        match *self {
            CliffordGate::P(q) => CliffordGate::Pdg(q),
            CliffordGate::Pdg(q) => CliffordGate::P(q),
            g => g,
        }
    }

    pub fn qubits(&self) -> Qubits {
        match *self {
            CliffordGate::H(q) | CliffordGate::P(q) | CliffordGate::Pdg(q) | CliffordGate::Pauli(_, q) => Qubits::One(q),
            CliffordGate::Swap(a, b) => Qubits::Two(a, b),
            CliffordGate::Tqe(t) => Qubits::Two(t.qubit_i, t.qubit_j),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self.qubits(), Qubits::Two(..))
    }

    pub fn check(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits().iter() {
            if q >= n_qubits {
                return Err(Error::QubitIndex { index: q, n_qubits });
            }
        }
        match *self {
            CliffordGate::Swap(a, b) if a == b => Err(Error::SameQubit(a)),
            CliffordGate::Tqe(t) if t.qubit_i >= t.qubit_j => Err(Error::SameQubit(t.qubit_i)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordGate::H(q) => write!(f, "H {q}"),
            CliffordGate::P(q) => write!(f, "P {q}"),
            CliffordGate::Pdg(q) => write!(f, "PDG {q}"),
            CliffordGate::Pauli(k, q) => write!(f, "{} {q}", k.as_char()),
            CliffordGate::Swap(a, b) => write!(f, "SWAP {a},{b}"),
            CliffordGate::Tqe(t) => write!(f, "{} {},{}", t.name(), t.qubit_i, t.qubit_j),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qubits {
    One(usize),
    Two(usize, usize),
}

impl Qubits {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            Qubits::One(q) => (q, None),
            Qubits::Two(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }
}

/// Packs local bits `(a_i, b_i, a_j, b_j)` as `a_i<<3 | b_i<<2 | a_j<<1 | b_j`.
/// Here `a` is the X-bit and `b` the Z-bit of the local Pauli.
#[inline]
pub fn pack_config(xi: bool, zi: bool, xj: bool, zj: bool) -> u8 {
    ((xi as u8) << 3) | ((zi as u8) << 2) | ((xj as u8) << 1) | (zj as u8)
}

#[inline]
pub fn unpack_config(c: u8) -> (bool, bool, bool, bool) {
    (c & 8 != 0, c & 4 != 0, c & 2 != 0, c & 1 != 0)
}

/// Entry of the TQE action table: the local configuration after conjugation
/// and whether the Hermitian sign flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TqeAction {
    pub config: u8,
    pub flip: bool,
}

/// `table[type_index][config]` gives `g P g` for the two-qubit local part `P`.
pub type TqeActionTable = [[TqeAction; 16]; 9];

/// `TQE(u,v) P TQE(u,v)` for a 2-qubit Hermitian-convention `P`:
/// unchanged if `P` commutes with `u_i` and `v_j`; `v_j P` if it anticommutes
/// only with `u_i`; `u_i P` if only with `v_j`; `-u_i v_j P` if with both.
fn conjugate_two_qubit(u: PauliKind, v: PauliKind, config: u8) -> TqeAction {
    let (xi, zi, xj, zj) = unpack_config(config);
    let pi = PauliKind::from_bits(xi, zi);
    let pj = PauliKind::from_bits(xj, zj);
    let p = SignedPauli::hermitian(PauliString::from_factors(2, [(0, pi), (1, pj)]));
    let uu = SignedPauli::hermitian(PauliString::single(2, 0, u));
    let vv = SignedPauli::hermitian(PauliString::single(2, 1, v));
    let out = match (!pi.commutes(u), !pj.commutes(v)) {
        (false, false) => p,
        (true, false) => vv.mul_unchecked(&p),
        (false, true) => uu.mul_unchecked(&p),
        (true, true) => {
            let mut r = uu.mul_unchecked(&vv).mul_unchecked(&p);
            r.negate();
            r
        }
    };
    debug_assert!(out.is_hermitian());
    let q = out.pauli();
    TqeAction {
        config: pack_config(q.x().get(0), q.z().get(0), q.x().get(1), q.z().get(1)),
        flip: out.sign_bit(),
    }
}

/// The memoized action of all nine TQE gates on all 16 local configurations.
pub fn tqe_action_table() -> &'static TqeActionTable {
    static TABLE: OnceLock<TqeActionTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[TqeAction { config: 0, flip: false }; 16]; 9];
        for (idx, row) in t.iter_mut().enumerate() {
            let (u, v) = types_of_index(idx);
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = conjugate_two_qubit(u, v, c as u8);
            }
        }
        t
    })
}

/// For each of the nine configurations with non-identity on both qubits, the
/// TQE types `(type_i, type_j)` whose action leaves only one qubit supported.
/// Other configurations map to an empty list.
pub fn reduction_table() -> &'static [Vec<(PauliKind, PauliKind)>; 16] {
    static TABLE: OnceLock<[Vec<(PauliKind, PauliKind)>; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let actions = tqe_action_table();
        std::array::from_fn(|c| {
            let c = c as u8;
            if c & 0b1100 == 0 || c & 0b0011 == 0 {
                return Vec::new();
            }
            (0..9)
                .filter(|&idx| {
                    let out = actions[idx][c as usize].config;
                    (out & 0b1100 == 0) != (out & 0b0011 == 0)
                })
                .map(types_of_index)
                .collect()
        })
    })
}

/// Forward single-qubit conjugation `g k g†` as (new kind, sign flip).
fn conjugate_one(gate: &CliffordGate, k: PauliKind) -> (PauliKind, bool) {
    use PauliKind::*;
    match (gate, k) {
        (_, I) => (I, false),
        (CliffordGate::H(_), X) => (Z, false),
        (CliffordGate::H(_), Z) => (X, false),
        (CliffordGate::H(_), Y) => (Y, true),
        (CliffordGate::P(_), X) => (Y, false),
        (CliffordGate::P(_), Y) => (X, true),
        (CliffordGate::Pdg(_), X) => (Y, true),
        (CliffordGate::Pdg(_), Y) => (X, false),
        (CliffordGate::P(_) | CliffordGate::Pdg(_), Z) => (Z, false),
        (CliffordGate::Pauli(p, _), k) => (k, !p.commutes(k)),
        _ => unreachable!("not a single-qubit gate"),
    }
}

#[inline]
fn local_config(p: &PauliString, i: usize, j: usize) -> u8 {
    pack_config(p.x().get(i), p.z().get(i), p.x().get(j), p.z().get(j))
}

#[inline]
fn set_local_config(p: &mut PauliString, i: usize, j: usize, c: u8) {
    let (xi, zi, xj, zj) = unpack_config(c);
    p.set(i, PauliKind::from_bits(xi, zi));
    p.set(j, PauliKind::from_bits(xj, zj));
}

/// `p <- g p g†`, returning whether the Hermitian sign flipped.
pub fn conjugate_pauli(p: &mut PauliString, gate: &CliffordGate) -> bool {
    match *gate {
        CliffordGate::H(q) | CliffordGate::P(q) | CliffordGate::Pdg(q) | CliffordGate::Pauli(_, q) => {
            let (k, flip) = conjugate_one(gate, p.get(q));
            p.set(q, k);
            flip
        }
        CliffordGate::Swap(a, b) => {
            let (ka, kb) = (p.get(a), p.get(b));
            p.set(a, kb);
            p.set(b, ka);
            false
        }
        CliffordGate::Tqe(t) => {
            let c = local_config(p, t.qubit_i, t.qubit_j);
            if c == 0 {
                return false;
            }
            let act = tqe_action_table()[t.type_index()][c as usize];
            set_local_config(p, t.qubit_i, t.qubit_j, act.config);
            act.flip
        }
    }
}

/// Signed forward conjugation `p <- g p g†`.
pub fn conjugate_signed(p: &mut SignedPauli, gate: &CliffordGate) {
    let phase = p.phase_exp();
    let mut pauli = std::mem::replace(p, SignedPauli::identity(0)).into_pauli();
    let flip = conjugate_pauli(&mut pauli, gate);
    *p = SignedPauli::new(pauli, if flip { phase + 2 } else { phase });
}
