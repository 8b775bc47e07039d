//! Pauli strings over GF(2) and phase-tracked Pauli group elements.
//!
//! A [`PauliString`] is an element of the Pauli space: a tensor product of
//! single-qubit `I/X/Y/Z` with the phase quotiented out. Addition in that
//! space is the operator product, so it is a bitwise XOR of the paired
//! `x`/`z` vectors. A [`SignedPauli`] adds back a power of `i` so products can
//! be taken exactly.
//!
//! The phase convention is Hermitian per tensor factor: `x=1,z=1` means `Y`
//! itself (not `XZ`), so `SignedPauli { phase_exp: 0 }` is always Hermitian.
//!
//! Text forms accepted by [`parse_pauli`]:
//! - dense, one character per qubit starting at qubit 0: `"IXYZ"`
//! - sparse, positioned factors: `"X0 Y2 Z5"` (needs the qubit count)
//!
//! Either may carry a leading phase: `+`, `-`, `i`, `+i`, `-i`.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Single-qubit Pauli label. The derived order `I < X < Y < Z` is relied on
/// for deterministic tie-breaking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub const NON_IDENTITY: [PauliKind; 3] = [PauliKind::X, PauliKind::Y, PauliKind::Z];

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliKind::I),
            'X' => Some(PauliKind::X),
            'Y' => Some(PauliKind::Y),
            'Z' => Some(PauliKind::Z),
            _ => None,
        }
    }

    /// Whether two single-qubit Paulis commute.
    #[inline]
    pub fn commutes(self, other: PauliKind) -> bool {
        self == PauliKind::I || other == PauliKind::I || self == other
    }
}

/// Tensor-product Pauli operator modulo phase.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        Self {
            x: BitVec::zeros(n_qubits),
            z: BitVec::zeros(n_qubits),
        }
    }

    pub fn from_bits(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch(x.len(), z.len()));
        }
        Ok(Self { x, z })
    }

    pub fn single(n_qubits: usize, qubit: usize, kind: PauliKind) -> Self {
        let mut p = Self::identity(n_qubits);
        p.set(qubit, kind);
        p
    }

    /// Builds a string from `(qubit, kind)` factors; later factors overwrite.
    pub fn from_factors<I>(n_qubits: usize, factors: I) -> Self
    where
        I: IntoIterator<Item = (usize, PauliKind)>,
    {
        let mut p = Self::identity(n_qubits);
        for (q, k) in factors {
            p.set(q, k);
        }
        p
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn get(&self, qubit: usize) -> PauliKind {
        PauliKind::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    #[inline]
    pub fn set(&mut self, qubit: usize, kind: PauliKind) {
        let (x, z) = kind.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Qubits carrying a non-identity factor, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, (a, b)) in self.x.words().iter().zip(self.z.words()).enumerate() {
            let mut w = a | b;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// GF(2) sum, i.e. the operator product with phase discarded.
    pub fn add_assign(&mut self, other: &PauliString) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    pub fn sum(&self, other: &PauliString) -> PauliString {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Symplectic form without the dimension check.
    #[inline]
    pub fn anticommutes(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n_qubits(), other.n_qubits());
        let mut acc = 0u64;
        for i in 0..self.x.words().len() {
            acc ^= (self.x.words()[i] & other.z.words()[i]) ^ (self.z.words()[i] & other.x.words()[i]);
        }
        acc.count_ones() & 1 == 1
    }

    pub fn commutes(&self, other: &PauliString) -> bool {
        !self.anticommutes(other)
    }

    pub fn to_dense_string(&self) -> String {
        (0..self.n_qubits()).map(|q| self.get(q).as_char()).collect()
    }

    /// `"X0 Z3"` style; the identity renders as `"I"`.
    pub fn to_sparse_string(&self) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|q| format!("{}{}", self.get(q).as_char(), q))
            .collect();
        if parts.is_empty() {
            "I".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dense_string())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({})", self.to_dense_string())
    }
}

/// The symplectic form: 1 iff `p` and `q` anticommute.
pub fn symplectic_form(p: &PauliString, q: &PauliString) -> Result<bool> {
    if p.n_qubits() != q.n_qubits() {
        return Err(Error::DimensionMismatch(p.n_qubits(), q.n_qubits()));
    }
    Ok(p.anticommutes(q))
}

/// Power of `i` picked up when multiplying Hermitian-convention strings
/// `(x1, z1) * (x2, z2)`, reduced mod 4.
fn product_phase(a: &PauliString, b: &PauliString) -> u8 {
    let mut acc: i64 = 0;
    let words = a.x.words().len();
    for w in 0..words {
        let (x1, z1) = (a.x.words()[w], a.z.words()[w]);
        let (x2, z2) = (b.x.words()[w], b.z.words()[w]);
        let (ax, ay, az) = (x1 & !z1, x1 & z1, !x1 & z1);
        let (bx, by, bz) = (x2 & !z2, x2 & z2, !x2 & z2);
        // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
        let plus = (ax & by) | (ay & bz) | (az & bx);
        let minus = (ax & bz) | (ay & bx) | (az & by);
        acc += plus.count_ones() as i64 - minus.count_ones() as i64;
    }
    acc.rem_euclid(4) as u8
}

/// A Pauli group element `i^phase_exp * P` with `P` in Hermitian convention.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pauli: PauliString,
    phase_exp: u8,
}

impl SignedPauli {
    pub fn new(pauli: PauliString, phase_exp: u8) -> Self {
        Self {
            pauli,
            phase_exp: phase_exp % 4,
        }
    }

    pub fn hermitian(pauli: PauliString) -> Self {
        Self::new(pauli, 0)
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::hermitian(PauliString::identity(n_qubits))
    }

    /// `+P` or `-P` from a sign bit.
    pub fn with_sign(pauli: PauliString, negative: bool) -> Self {
        Self::new(pauli, if negative { 2 } else { 0 })
    }

    #[inline]
    pub fn pauli(&self) -> &PauliString {
        &self.pauli
    }

    pub fn into_pauli(self) -> PauliString {
        self.pauli
    }

    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.pauli.n_qubits()
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase_exp % 2 == 0
    }

    /// 1 iff the element is `-P` for Hermitian `P`. Only meaningful when
    /// [`is_hermitian`](Self::is_hermitian) holds.
    pub fn sign_bit(&self) -> bool {
        self.phase_exp == 2
    }

    pub fn negate(&mut self) {
        self.phase_exp = (self.phase_exp + 2) % 4;
    }

    pub fn mul_phase(&mut self, exp: u8) {
        self.phase_exp = (self.phase_exp + exp) % 4;
    }

    pub fn multiply(&self, other: &SignedPauli) -> Result<SignedPauli> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::DimensionMismatch(self.n_qubits(), other.n_qubits()));
        }
        Ok(self.mul_unchecked(other))
    }

    /// In-place right multiplication `self <- self * other`.
    pub fn mul_assign(&mut self, other: &SignedPauli) {
        debug_assert_eq!(self.n_qubits(), other.n_qubits());
        let g = product_phase(&self.pauli, &other.pauli);
        self.phase_exp = (self.phase_exp + other.phase_exp + g) % 4;
        self.pauli.add_assign(&other.pauli);
    }

    pub(crate) fn mul_unchecked(&self, other: &SignedPauli) -> SignedPauli {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    /// Equality modulo the global phase.
    pub fn eq_mod_phase(&self, other: &SignedPauli) -> bool {
        self.pauli == other.pauli
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_pauli(self))
    }
}

impl fmt::Debug for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPauli({})", format_pauli(self))
    }
}

impl FromStr for SignedPauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pauli(s, None)
    }
}

pub fn multiply(a: &SignedPauli, b: &SignedPauli) -> Result<SignedPauli> {
    a.multiply(b)
}

fn parse_err(text: &str, reason: impl Into<String>) -> Error {
    Error::PauliParse {
        text: text.to_string(),
        reason: reason.into(),
    }
}

/// Parses dense (`"IXYZ"`) or sparse (`"X0 Y2"`) text. The sparse form needs
/// `n_qubits`; for the dense form it is checked when given.
pub fn parse_pauli(text: &str, n_qubits: Option<usize>) -> Result<SignedPauli> {
    let mut body = text.trim();
    let mut phase = 0u8;
    if let Some(rest) = body.strip_prefix('-') {
        phase = 2;
        body = rest;
    } else if let Some(rest) = body.strip_prefix('+') {
        body = rest;
    }
    if let Some(rest) = body.strip_prefix('i') {
        phase = (phase + 1) % 4;
        body = rest;
    }
    let body = body.trim();

    let pauli = if body.chars().any(|c| c.is_ascii_digit()) {
        let n = n_qubits.ok_or_else(|| parse_err(text, "sparse form needs a qubit count"))?;
        let mut p = PauliString::identity(n);
        let mut seen = vec![false; n];
        for token in body.split_whitespace() {
            let mut chars = token.chars();
            let kind = chars
                .next()
                .and_then(PauliKind::from_char)
                .ok_or_else(|| parse_err(text, format!("bad factor {token:?}")))?;
            let index: usize = chars
                .as_str()
                .parse()
                .map_err(|_| parse_err(text, format!("bad qubit index in {token:?}")))?;
            if index >= n {
                return Err(Error::QubitIndex { index, n_qubits: n });
            }
            if seen[index] {
                return Err(parse_err(text, format!("qubit {index} repeated")));
            }
            seen[index] = true;
            p.set(index, kind);
        }
        p
    } else if body.is_empty() || (body == "I" && n_qubits.is_some_and(|n| n != 1)) {
        let n = n_qubits.ok_or_else(|| parse_err(text, "empty Pauli string"))?;
        PauliString::identity(n)
    } else {
        let kinds: Vec<PauliKind> = body
            .chars()
            .map(|c| PauliKind::from_char(c).ok_or_else(|| parse_err(text, format!("unknown character {c:?}"))))
            .collect::<Result<_>>()?;
        if let Some(n) = n_qubits {
            if n != kinds.len() {
                return Err(Error::DimensionMismatch(kinds.len(), n));
            }
        }
        PauliString::from_factors(kinds.len(), kinds.into_iter().enumerate())
    };
    Ok(SignedPauli::new(pauli, phase))
}

/// Dense text with a phase prefix (`""`, `"i"`, `"-"`, `"-i"`).
pub fn format_pauli(p: &SignedPauli) -> String {
    let prefix = match p.phase_exp {
        0 => "",
        1 => "i",
        2 => "-",
        _ => "-i",
    };
    format!("{prefix}{}", p.pauli.to_dense_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use proptest::prelude::*;

    fn sp(s: &str) -> SignedPauli {
        s.parse().unwrap()
    }

    // Dense-matrix oracle, qubit 0 as the leftmost tensor factor.
    fn single_matrix(k: PauliKind) -> [[C; 2]; 2] {
        let (o, l, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
        match k {
            PauliKind::I => [[l, o], [o, l]],
            PauliKind::X => [[o, l], [l, o]],
            PauliKind::Y => [[o, -i], [i, o]],
            PauliKind::Z => [[l, o], [o, -l]],
        }
    }

    fn dense(p: &SignedPauli) -> Vec<Vec<C>> {
        let mut m = vec![vec![C::new(1.0, 0.0)]];
        for q in 0..p.n_qubits() {
            let s = single_matrix(p.pauli().get(q));
            let d = m.len();
            let mut out = vec![vec![C::new(0.0, 0.0); 2 * d]; 2 * d];
            for r in 0..d {
                for c in 0..d {
                    for a in 0..2 {
                        for b in 0..2 {
                            out[2 * r + a][2 * c + b] = m[r][c] * s[a][b];
                        }
                    }
                }
            }
            m = out;
        }
        let ph = C::new(0.0, 1.0).powu(p.phase_exp() as u32);
        m.iter().map(|row| row.iter().map(|v| v * ph).collect()).collect()
    }

    fn matmul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
        let n = a.len();
        (0..n)
            .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect())
            .collect()
    }

    fn all_paulis(n: usize) -> Vec<SignedPauli> {
        (0..4usize.pow(n as u32))
            .map(|mut code| {
                let mut p = PauliString::identity(n);
                for q in 0..n {
                    p.set(q, [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z][code % 4]);
                    code /= 4;
                }
                SignedPauli::hermitian(p)
            })
            .collect()
    }

    #[test]
    fn symplectic_examples() {
        let x0 = sp("X");
        let z0 = sp("Z");
        assert!(symplectic_form(x0.pauli(), z0.pauli()).unwrap());
        let a = sp("XZ");
        let b = sp("ZX");
        assert!(!symplectic_form(a.pauli(), b.pauli()).unwrap());
        let bad = symplectic_form(x0.pauli(), a.pauli());
        assert!(matches!(bad, Err(Error::DimensionMismatch(1, 2))));
    }

    #[test]
    fn symplectic_matches_dense_commutator() {
        for p in all_paulis(2) {
            for q in all_paulis(2) {
                let pq = matmul(&dense(&p), &dense(&q));
                let qp = matmul(&dense(&q), &dense(&p));
                let commute = pq.iter().flatten().zip(qp.iter().flatten()).all(|(a, b)| (a - b).norm() < 1e-12);
                assert_eq!(p.pauli().anticommutes(q.pauli()), !commute, "{p} {q}");
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let r = multiply(&sp("X"), &sp("Z")).unwrap();
        assert_eq!(r.pauli().to_dense_string(), "Y");
        assert_eq!(r.phase_exp(), 3);

        let p = sp("XYZ");
        let sq = multiply(&p, &p).unwrap();
        assert!(sq.pauli().is_identity());
        assert_eq!(sq.phase_exp(), 0);

        let r = multiply(&sp("ZZII"), &sp("IIZZ")).unwrap();
        assert_eq!(r, sp("ZZZZ"));
    }

    #[test]
    fn multiply_agrees_with_dense_products_exhaustively() {
        for n in 1..=3 {
            let all = all_paulis(n);
            for a in &all {
                for b in &all {
                    let got = dense(&multiply(a, b).unwrap());
                    let want = matmul(&dense(a), &dense(b));
                    let err: f64 = got.iter().flatten().zip(want.iter().flatten()).map(|(x, y)| (x - y).norm()).sum();
                    assert!(err < 1e-12, "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn multiply_dimension_mismatch() {
        assert!(multiply(&sp("X"), &sp("XX")).is_err());
    }

    #[test]
    fn parse_examples() {
        let p = parse_pauli("Z0 Z1", Some(4)).unwrap();
        assert_eq!(format!("{:?}", p.pauli().x()), "0000");
        assert_eq!(format!("{:?}", p.pauli().z()), "1100");

        let p = sp("IXYZ");
        assert_eq!(format!("{:?}", p.pauli().x()), "0110");
        assert_eq!(format!("{:?}", p.pauli().z()), "0011");

        let p = parse_pauli("-X0", Some(3)).unwrap();
        assert_eq!(p.phase_exp(), 2);
        assert!(p.pauli().x().get(0));

        assert_eq!(parse_pauli("-i XY", None).unwrap().phase_exp(), 3);
        assert!(parse_pauli("I", Some(3)).unwrap().pauli().is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_pauli("XQ", None), Err(Error::PauliParse { .. })));
        assert!(matches!(parse_pauli("X4", Some(4)), Err(Error::QubitIndex { index: 4, .. })));
        assert!(matches!(parse_pauli("X1 Z1", Some(4)), Err(Error::PauliParse { .. })));
        assert!(parse_pauli("X1", None).is_err());
        assert!(matches!(parse_pauli("XX", Some(3)), Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn non_degenerate_up_to_four_qubits() {
        for n in 1..=4 {
            let basis: Vec<PauliString> = (0..n)
                .flat_map(|q| [PauliString::single(n, q, PauliKind::X), PauliString::single(n, q, PauliKind::Z)])
                .collect();
            for p in all_paulis(n).iter().skip(1) {
                assert!(basis.iter().any(|b| b.anticommutes(p.pauli())), "{p}");
            }
        }
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = SignedPauli> {
        (proptest::collection::vec(0u8..4, n), 0u8..4).prop_map(move |(ks, ph)| {
            let p = PauliString::from_factors(
                n,
                ks.into_iter()
                    .enumerate()
                    .map(|(q, k)| (q, [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z][k as usize])),
            );
            SignedPauli::new(p, ph)
        })
    }

    proptest! {
        #[test]
        fn symplectic_is_bilinear_and_alternating(
            (p, q, r) in (1usize..150).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n), arb_pauli(n)))
        ) {
            let (p, q, r) = (p.pauli(), q.pauli(), r.pauli());
            prop_assert!(!p.anticommutes(p));
            let lhs = p.sum(q).anticommutes(r);
            prop_assert_eq!(lhs, p.anticommutes(r) ^ q.anticommutes(r));
        }

        #[test]
        fn format_parse_round_trip(p in (1usize..100).prop_flat_map(arb_pauli)) {
            let text = format_pauli(&p);
            prop_assert_eq!(parse_pauli(&text, Some(p.n_qubits())).unwrap(), p.clone());
            let sparse = p.pauli().to_sparse_string();
            let back = parse_pauli(&sparse, Some(p.n_qubits())).unwrap();
            prop_assert_eq!(back.pauli(), p.pauli());
        }

        #[test]
        fn hermitian_products_have_consistent_sign(
            (a, b) in (1usize..80).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
        ) {
            let a = SignedPauli::hermitian(a.into_pauli());
            let b = SignedPauli::hermitian(b.into_pauli());
            let ab = a.multiply(&b).unwrap();
            // Hermitian iff the factors commute.
            prop_assert_eq!(ab.is_hermitian(), a.pauli().commutes(b.pauli()));
        }
    }
}
