//! Signed Pauli frames and per-term coordinates.
//!
//! A frame records a Clifford `W` through the conjugated generators
//! `s_i = W† Z_i W` and `s̃_i = W† X_i W`. Appending a gate `g` to the circuit
//! (`W <- g W`) is the *backward* action on the frame. The coordinates of a
//! Pauli `p` in the frame are the X/Z bits of its image `W p W†`, so a term's
//! coordinates move by forward conjugation with each appended gate.

mod gates;

pub use gates::{
    conjugate_pauli, conjugate_signed, pack_config, reduction_table, tqe_action_table, unpack_config,
    CliffordGate, Qubits, TqeAction, TqeActionTable, TqeGate, TQE_NAMES,
};

use std::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliString, SignedPauli};

/// Signed Pauli frame: `N` pairs `(s_i, s̃_i)` of Hermitian signed Paulis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedFrame {
    s: Vec<SignedPauli>,
    s_tilde: Vec<SignedPauli>,
}

impl SignedFrame {
    /// Rows `(Z_i, X_i)` with all signs positive.
    pub fn origin(n_qubits: usize) -> Self {
        Self {
            s: (0..n_qubits)
                .map(|i| SignedPauli::hermitian(PauliString::single(n_qubits, i, PauliKind::Z)))
                .collect(),
            s_tilde: (0..n_qubits)
                .map(|i| SignedPauli::hermitian(PauliString::single(n_qubits, i, PauliKind::X)))
                .collect(),
        }
    }

    /// Builds a frame from explicit rows, checking the commutation relations.
    pub fn from_rows(s: Vec<SignedPauli>, s_tilde: Vec<SignedPauli>) -> Result<Self> {
        if s.len() != s_tilde.len() {
            return Err(Error::DimensionMismatch(s.len(), s_tilde.len()));
        }
        let n = s.len();
        for p in s.iter().chain(&s_tilde) {
            if p.n_qubits() != n {
                return Err(Error::DimensionMismatch(p.n_qubits(), n));
            }
            if !p.is_hermitian() {
                return Err(Error::InvalidParameter(format!("frame entry {p} is not Hermitian")));
            }
        }
        let frame = Self { s, s_tilde };
        frame.validate()?;
        Ok(frame)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.s.len()
    }

    #[inline]
    pub fn s(&self, i: usize) -> &SignedPauli {
        &self.s[i]
    }

    #[inline]
    pub fn s_tilde(&self, i: usize) -> &SignedPauli {
        &self.s_tilde[i]
    }

    pub fn sign_s(&self, i: usize) -> bool {
        self.s[i].sign_bit()
    }

    pub fn sign_s_tilde(&self, i: usize) -> bool {
        self.s_tilde[i].sign_bit()
    }

    pub fn sign_s_bits(&self) -> BitVec {
        BitVec::from_bools(self.s.iter().map(SignedPauli::sign_bit))
    }

    pub fn sign_s_tilde_bits(&self) -> BitVec {
        BitVec::from_bools(self.s_tilde.iter().map(SignedPauli::sign_bit))
    }

    /// Same rows with every sign cleared.
    pub fn unsigned(&self) -> Self {
        let strip = |v: &[SignedPauli]| v.iter().map(|p| SignedPauli::hermitian(p.pauli().clone())).collect();
        Self { s: strip(&self.s), s_tilde: strip(&self.s_tilde) }
    }

    /// Origin rows and all signs zero.
    pub fn is_origin(&self) -> bool {
        *self == Self::origin(self.n_qubits())
    }

    /// Checks `λ(s_i,s_j) = λ(s̃_i,s̃_j) = 0` and `λ(s_i,s̃_j) = δ_ij`.
    /// These relations imply full rank.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_qubits();
        for i in 0..n {
            for j in 0..n {
                let ss = self.s[i].pauli().anticommutes(self.s[j].pauli());
                let tt = self.s_tilde[i].pauli().anticommutes(self.s_tilde[j].pauli());
                let st = self.s[i].pauli().anticommutes(self.s_tilde[j].pauli());
                if ss || tt || st != (i == j) {
                    return Err(Error::RankDeficient);
                }
            }
        }
        Ok(())
    }

    fn check_gate(&self, gate: &CliffordGate) -> Result<()> {
        gate.check(self.n_qubits())
    }

    /// Image of a local signed Pauli `Q` under `W† · W`, built by substituting
    /// `X_k -> s̃_k` and `Z_k -> s_k` (with `Y = i X Z`).
    fn substitute(&self, q: &SignedPauli) -> SignedPauli {
        let p = q.pauli();
        let mut out = SignedPauli::identity(self.n_qubits());
        let mut phase = q.phase_exp();
        for m in p.support() {
            let (x, z) = p.get(m).bits();
            if x {
                out.mul_assign(&self.s_tilde[m]);
            }
            if z {
                out.mul_assign(&self.s[m]);
            }
            if x && z {
                phase += 1;
            }
        }
        out.mul_phase(phase % 4);
        out
    }

    /// Backward action of appending `gate` to the circuit.
    pub fn backward_apply(&mut self, gate: &CliffordGate) -> Result<()> {
        self.check_gate(gate)?;
        self.backward_apply_unchecked(gate);
        Ok(())
    }

    pub(crate) fn backward_apply_unchecked(&mut self, gate: &CliffordGate) {
        if let CliffordGate::Swap(a, b) = *gate {
            self.s.swap(a, b);
            self.s_tilde.swap(a, b);
            return;
        }
        if let CliffordGate::Pauli(k, q) = *gate {
            // g† Z_q g = ±Z_q and likewise for X_q.
            if !k.commutes(PauliKind::Z) {
                self.s[q].negate();
            }
            if !k.commutes(PauliKind::X) {
                self.s_tilde[q].negate();
            }
            return;
        }
        let n = self.n_qubits();
        let inv = gate.inverse();
        let mut updates = Vec::with_capacity(4);
        for k in gate.qubits().iter() {
            for (is_z, kind) in [(true, PauliKind::Z), (false, PauliKind::X)] {
                let mut q = SignedPauli::hermitian(PauliString::single(n, k, kind));
                conjugate_signed(&mut q, &inv);
                updates.push((k, is_z, self.substitute(&q)));
            }
        }
        for (k, is_z, v) in updates {
            if is_z {
                self.s[k] = v;
            } else {
                self.s_tilde[k] = v;
            }
        }
    }

    pub fn backward_apply_all<'a, I>(&mut self, gates: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a CliffordGate>,
    {
        for g in gates {
            self.backward_apply(g)?;
        }
        Ok(())
    }

    /// Conjugates every row entry by `gate`.
    pub fn forward_apply(&mut self, gate: &CliffordGate) -> Result<()> {
        self.check_gate(gate)?;
        for p in self.s.iter_mut().chain(self.s_tilde.iter_mut()) {
            conjugate_signed(p, gate);
        }
        Ok(())
    }
}

impl fmt::Debug for SignedFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for (s, t) in self.s.iter().zip(&self.s_tilde) {
            l.entry(&format_args!("({s}, {t})"));
        }
        l.finish()
    }
}

pub fn origin_frame(n_qubits: usize) -> SignedFrame {
    SignedFrame::origin(n_qubits)
}

/// Binary expansion of a Pauli in a frame.
///
/// `a_i` is the coefficient of `s̃_i` and `b_i` that of `s_i`; stored as the
/// string with X-bits `a` and Z-bits `b`, which is the image `W p W†`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoordinateVector {
    image: PauliString,
}

impl CoordinateVector {
    pub fn from_bits(a: BitVec, b: BitVec) -> Result<Self> {
        Ok(Self { image: PauliString::from_bits(a, b)? })
    }

    pub fn from_image(image: PauliString) -> Self {
        Self { image }
    }

    #[inline]
    pub fn a(&self) -> &BitVec {
        self.image.x()
    }

    #[inline]
    pub fn b(&self) -> &BitVec {
        self.image.z()
    }

    /// The coordinates read as a Pauli string (`a` as X-bits, `b` as Z-bits).
    #[inline]
    pub fn image(&self) -> &PauliString {
        &self.image
    }

    pub fn n_qubits(&self) -> usize {
        self.image.n_qubits()
    }

    /// Local Pauli kind at qubit `i` (`(a_i, b_i)` as X/Z bits).
    #[inline]
    pub fn kind(&self, i: usize) -> PauliKind {
        self.image.get(i)
    }

    /// Number of qubits with `a_i ∨ b_i`.
    #[inline]
    pub fn support(&self) -> usize {
        self.image.weight()
    }

    pub fn support_qubits(&self) -> Vec<usize> {
        self.image.support()
    }

    /// Packed local configuration on `(i, j)`.
    #[inline]
    pub fn local_config(&self, i: usize, j: usize) -> u8 {
        let p = &self.image;
        pack_config(p.x().get(i), p.z().get(i), p.x().get(j), p.z().get(j))
    }

    /// Updates the coordinates for the frame after `gate` is backward-applied.
    /// Returns whether the sign of the tracked image flips.
    #[inline]
    pub fn update(&mut self, gate: &CliffordGate) -> bool {
        conjugate_pauli(&mut self.image, gate)
    }

    /// `Σ a_i s̃_i + b_i s_i`, modulo phase.
    pub fn reconstruct(&self, frame: &SignedFrame) -> PauliString {
        let mut p = PauliString::identity(frame.n_qubits());
        for i in self.image.support() {
            let (a, b) = self.image.get(i).bits();
            if a {
                p.add_assign(frame.s_tilde(i).pauli());
            }
            if b {
                p.add_assign(frame.s(i).pauli());
            }
        }
        p
    }
}

impl fmt::Debug for CoordinateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordinateVector(a={:?}, b={:?})", self.a(), self.b())
    }
}

/// Coordinates `a_i = λ(s_i, p)`, `b_i = λ(s̃_i, p)`.
pub fn expand(p: &PauliString, frame: &SignedFrame) -> Result<CoordinateVector> {
    let n = frame.n_qubits();
    if p.n_qubits() != n {
        return Err(Error::DimensionMismatch(p.n_qubits(), n));
    }
    let a = BitVec::from_bools((0..n).map(|i| frame.s(i).pauli().anticommutes(p)));
    let b = BitVec::from_bools((0..n).map(|i| frame.s_tilde(i).pauli().anticommutes(p)));
    CoordinateVector::from_bits(a, b)
}

/// The signed image `W p W†` of a Hermitian `+p`.
pub fn signed_image(p: &PauliString, frame: &SignedFrame) -> Result<SignedPauli> {
    let coords = expand(p, frame)?;
    // Π s̃_i^{a_i} s_i^{b_i} = W† (Π X^a Z^b) W = i^{-#Y} W† Q W for the image Q.
    let q = SignedPauli::hermitian(coords.image().clone());
    let r = frame.substitute(&q);
    debug_assert_eq!(r.pauli(), p);
    Ok(SignedPauli::with_sign(coords.image, r.sign_bit()))
}

/// In-place coordinate update for a backward-applied gate; returns the sign flip.
pub fn coord_update(coords: &mut CoordinateVector, gate: &CliffordGate) -> bool {
    coords.update(gate)
}

pub fn relative_support(coords: &CoordinateVector) -> usize {
    coords.support()
}

/// The Pauli `p` with `V_B̲ = V_B p`, where `V_B` has the same rows as the
/// frame and all signs positive: `p = Σ sign(s_i) s̃_i + sign(s̃_i) s_i`.
pub fn residual_pauli(frame: &SignedFrame) -> SignedPauli {
    let mut p = PauliString::identity(frame.n_qubits());
    for i in 0..frame.n_qubits() {
        if frame.sign_s(i) {
            p.add_assign(frame.s_tilde(i).pauli());
        }
        if frame.sign_s_tilde(i) {
            p.add_assign(frame.s(i).pauli());
        }
    }
    SignedPauli::hermitian(p)
}

/// Clifford gates whose backward application takes `frame` to the origin
/// frame with all signs zero. Uses only `H`, `P`, CX-family TQE gates and a
/// trailing layer of single-qubit Paulis.
pub fn return_gates(frame: &SignedFrame) -> Result<Vec<CliffordGate>> {
    frame.validate()?;
    let n = frame.n_qubits();
    let mut best: Option<Vec<CliffordGate>> = None;
    for order in pivot_orders(n) {
        let gates = eliminate(frame, &order)?;
        let key = |g: &[CliffordGate]| (g.iter().filter(|g| g.is_two_qubit()).count(), g.len());
        if best.as_ref().is_none_or(|b| key(&gates) < key(b)) {
            best = Some(gates);
        }
    }
    Ok(best.unwrap_or_default())
}

/// Pivot orders tried by [`return_gates`]: every permutation up to five
/// qubits, otherwise ascending and descending.
fn pivot_orders(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    if n <= 5 {
        let mut p: Vec<usize> = (0..n).collect();
        while next_permutation(&mut p) {
            out.push(p.clone());
        }
    } else {
        out.push((0..n).rev().collect());
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Symplectic Gaussian elimination with pivots taken in `order`.
fn eliminate(frame: &SignedFrame, order: &[usize]) -> Result<Vec<CliffordGate>> {
    let n = frame.n_qubits();
    let mut work = frame.clone();
    // Forward images of X_i and Z_i under the frame's Clifford.
    let mut xs: Vec<PauliString> = Vec::with_capacity(n);
    let mut zs: Vec<PauliString> = Vec::with_capacity(n);
    for i in 0..n {
        xs.push(expand(&PauliString::single(n, i, PauliKind::X), frame)?.image);
        zs.push(expand(&PauliString::single(n, i, PauliKind::Z), frame)?.image);
    }
    let mut out = Vec::new();
    let mut push = |g: CliffordGate, work: &mut SignedFrame, xs: &mut [PauliString], zs: &mut [PauliString]| {
        work.backward_apply_unchecked(&g);
        for p in xs.iter_mut().chain(zs.iter_mut()) {
            conjugate_pauli(p, &g);
        }
        out.push(g);
    };
    let cx = |c: usize, t: usize| CliffordGate::Tqe(TqeGate::cx(c, t).expect("distinct qubits"));

    for (r, &i) in order.iter().enumerate() {
        let rest = &order[r..];
        // Turn the X-image into X-type factors on the remaining pivots.
        for &k in rest {
            match xs[i].get(k) {
                PauliKind::Z => push(CliffordGate::H(k), &mut work, &mut xs, &mut zs),
                PauliKind::Y => push(CliffordGate::P(k), &mut work, &mut xs, &mut zs),
                _ => {}
            }
        }
        let support: Vec<usize> = xs[i].support().into_iter().filter(|k| rest.contains(k)).collect();
        if support.is_empty() {
            return Err(Error::RankDeficient);
        }
        if xs[i].get(i) == PauliKind::I {
            push(cx(support[0], i), &mut work, &mut xs, &mut zs);
        }
        for &k in &support {
            if k != i {
                push(cx(i, k), &mut work, &mut xs, &mut zs);
            }
        }
        // The Z-image now anticommutes with X_i only; make it Z_i.
        match zs[i].get(i) {
            PauliKind::Y => {
                for g in [CliffordGate::H(i), CliffordGate::P(i), CliffordGate::H(i)] {
                    push(g, &mut work, &mut xs, &mut zs);
                }
            }
            PauliKind::Z => {}
            _ => return Err(Error::RankDeficient),
        }
        for &k in &rest[1..] {
            match zs[i].get(k) {
                PauliKind::I => continue,
                PauliKind::X => push(CliffordGate::H(k), &mut work, &mut xs, &mut zs),
                PauliKind::Y => {
                    push(CliffordGate::P(k), &mut work, &mut xs, &mut zs);
                    push(CliffordGate::H(k), &mut work, &mut xs, &mut zs);
                }
                PauliKind::Z => {}
            }
            push(cx(k, i), &mut work, &mut xs, &mut zs);
        }
    }
    if work.unsigned() != SignedFrame::origin(n) {
        return Err(Error::RankDeficient);
    }
    let residual = residual_pauli(&work);
    for q in residual.pauli().support() {
        let g = CliffordGate::Pauli(residual.pauli().get(q), q);
        work.backward_apply_unchecked(&g);
        out.push(g);
    }
    debug_assert!(work.is_origin());
    Ok(out)
}
