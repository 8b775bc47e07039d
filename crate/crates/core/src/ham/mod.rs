//! Pauli-sum Hamiltonians, the benchmark model generators, and the
//! Hamiltonian file format.
//!
//! File format: `#` comments, a `qubits N` header, then lines
//! `<coefficient> <pauli>` with the Pauli in dense (`XIZY`) or sparse
//! (`X0 Z2 Y3`) form. Saving writes the canonical form: terms sorted by dense
//! string and coefficients with 17 significant digits.

mod boson;
mod fermion;

pub use boson::{
    bose_hubbard, bosonic_matrix_to_paulis, encode_operator, ladder_matrices, vibronic, vibronic_from_params,
    BosonEncoding, EncodingKind, VibronicParams,
};
pub use fermion::{
    bk_occupation_set, bk_parity_set, bk_update_set, bravyi_kitaev, fermi_hubbard, jordan_wigner, ladder_image,
    FermionMapping, LadderTerm,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{parse_pauli, PauliString, SignedPauli};

/// Default magnitude below which merged coefficients are dropped.
pub const DEFAULT_DROP_THRESHOLD: f64 = 1e-8;

/// Imaginary parts up to this size are truncated when assembling a
/// Hamiltonian; anything larger is reported as non-Hermitian.
pub const IMAG_TOLERANCE: f64 = 1e-12;

/// Complex linear combination of Pauli strings, closed under products.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

fn phase_factor(exp: u8) -> Complex64 {
    match exp % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self { n_qubits, terms: BTreeMap::new() }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::term(Complex64::new(1.0, 0.0), PauliString::identity(n_qubits))
    }

    pub fn term(coefficient: Complex64, pauli: PauliString) -> Self {
        let mut s = Self::zero(pauli.n_qubits());
        s.add_term(coefficient, pauli);
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    pub fn add_term(&mut self, coefficient: Complex64, pauli: PauliString) {
        debug_assert_eq!(pauli.n_qubits(), self.n_qubits);
        *self.terms.entry(pauli).or_default() += coefficient;
    }

    pub fn add_assign(&mut self, other: &PauliSum) {
        for (p, c) in &other.terms {
            self.add_term(*c, p.clone());
        }
    }

    pub fn scale(&mut self, factor: Complex64) {
        for c in self.terms.values_mut() {
            *c *= factor;
        }
    }

    pub fn scaled(mut self, factor: Complex64) -> Self {
        self.scale(factor);
        self
    }

    pub fn mul(&self, other: &PauliSum) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for (p, a) in &self.terms {
            let sp = SignedPauli::hermitian(p.clone());
            for (q, b) in &other.terms {
                let prod = sp.mul_unchecked(&SignedPauli::hermitian(q.clone()));
                let phase = phase_factor(prod.phase_exp());
                out.add_term(a * b * phase, prod.into_pauli());
            }
        }
        out
    }

    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c.conj())).collect(),
        }
    }

    /// Removes terms with modulus at most `tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() > tol);
    }

    /// Places a sum on `self.n_qubits` qubits starting at `offset` of a
    /// larger register.
    pub fn embed(&self, offset: usize, total: usize) -> Result<PauliSum> {
        if offset + self.n_qubits > total {
            return Err(Error::QubitIndex { index: offset + self.n_qubits - 1, n_qubits: total });
        }
        let mut out = PauliSum::zero(total);
        for (p, c) in &self.terms {
            let q = PauliString::from_factors(total, p.support().into_iter().map(|k| (offset + k, p.get(k))));
            out.add_term(*c, q);
        }
        Ok(out)
    }

    /// Real Hamiltonian from a Hermitian sum. The identity component is
    /// discarded.
    pub fn into_hamiltonian(self, drop_threshold: f64) -> Result<PauliSumHamiltonian> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (p, c) in self.terms {
            if c.im.abs() > IMAG_TOLERANCE.max(1e-12 * c.re.abs()) {
                return Err(Error::NotHermitian(c.im));
            }
            terms.push((c.re, p));
        }
        PauliSumHamiltonian::with_threshold(self.n_qubits, terms, drop_threshold)
    }
}

/// Real Pauli-sum Hamiltonian `Σ c_α p_α` in canonical term order.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSumHamiltonian {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSumHamiltonian {
    /// Merges duplicates, drops identity terms and small coefficients
    /// (default threshold), and sorts terms by dense string.
    pub fn new(n_qubits: usize, terms: Vec<(f64, PauliString)>) -> Result<Self> {
        Self::with_threshold(n_qubits, terms, DEFAULT_DROP_THRESHOLD)
    }

    pub fn with_threshold(n_qubits: usize, terms: Vec<(f64, PauliString)>, drop_threshold: f64) -> Result<Self> {
        let mut merged: BTreeMap<String, (f64, PauliString)> = BTreeMap::new();
        for (c, p) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch(p.n_qubits(), n_qubits));
            }
            if !c.is_finite() {
                return Err(Error::InvalidParameter(format!("coefficient {c} is not finite")));
            }
            if p.is_identity() {
                continue;
            }
            merged.entry(p.to_dense_string()).or_insert((0.0, p)).0 += c;
        }
        let terms = merged.into_values().filter(|(c, _)| c.abs() >= drop_threshold).collect();
        Ok(Self { n_qubits, terms })
    }

    pub fn empty(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn to_pauli_sum(&self) -> PauliSum {
        let mut s = PauliSum::zero(self.n_qubits);
        for (c, p) in &self.terms {
            s.add_term(Complex64::new(*c, 0.0), p.clone());
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for (c, p) in &self.terms {
            let _ = writeln!(out, "{c:.16e} {}", p.to_dense_string());
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_threshold(text, DEFAULT_DROP_THRESHOLD)
    }

    pub fn parse_with_threshold(text: &str, drop_threshold: f64) -> Result<Self> {
        let mut n_qubits = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest = rest.trim();
            let Some(n) = n_qubits else {
                if head != "qubits" {
                    return Err(Error::parse(line, "expected `qubits N` header"));
                }
                n_qubits = Some(rest.parse().map_err(|_| Error::parse(line, format!("bad qubit count {rest:?}")))?);
                continue;
            };
            let c: f64 = head.parse().map_err(|_| Error::parse(line, format!("bad coefficient {head:?}")))?;
            if rest.is_empty() {
                return Err(Error::parse(line, "missing Pauli string"));
            }
            let p = parse_pauli(rest, Some(n)).map_err(|e| match e {
                Error::DimensionMismatch(got, want) => {
                    Error::parse(line, format!("inconsistent qubit count: term has {got}, header says {want}"))
                }
                e => Error::parse(line, e.to_string()),
            })?;
            if p.phase_exp() != 0 {
                return Err(Error::parse(line, "Pauli strings must not carry a phase; put the sign in the coefficient"));
            }
            terms.push((c, p.into_pauli()));
        }
        let n = n_qubits.ok_or_else(|| Error::parse(0, "missing `qubits N` header"))?;
        Self::with_threshold(n, terms, drop_threshold)
    }
}

pub fn load_hamiltonian(path: impl AsRef<Path>) -> Result<PauliSumHamiltonian> {
    PauliSumHamiltonian::parse(&std::fs::read_to_string(path)?)
}

pub fn save_hamiltonian(h: &PauliSumHamiltonian, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, h.to_text())?;
    Ok(())
}

/// Ordinary least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        parse_pauli(s, None).unwrap().into_pauli()
    }

    #[test]
    fn duplicate_lines_merge() {
        let h = PauliSumHamiltonian::parse("qubits 2\n0.5 ZZ\n0.25 Z0 Z1\n1 XI\n").unwrap();
        assert_eq!(h.n_terms(), 2);
        assert_eq!(h.terms()[1], (0.75, ps("ZZ")));
    }

    #[test]
    fn empty_body_is_valid() {
        let h = PauliSumHamiltonian::parse("# nothing\nqubits 3\n").unwrap();
        assert!(h.is_empty());
        assert_eq!(h.n_qubits(), 3);
    }

    #[test]
    fn canonical_round_trip() {
        let h = PauliSumHamiltonian::parse("qubits 3\n0.1 ZZI\n-2 XIY\n1e-12 ZZZ\n3 III\n").unwrap();
        assert_eq!(h.n_terms(), 2);
        let text = h.to_text();
        assert_eq!(text, "qubits 3\n-2.0000000000000000e0 XIY\n1.0000000000000001e-1 ZZI\n");
        assert_eq!(PauliSumHamiltonian::parse(&text).unwrap().to_text(), text);
    }

    #[test]
    fn parse_errors() {
        let e = PauliSumHamiltonian::parse("qubits 2\n0.5 ZZ\n0.5 ZZZ\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = PauliSumHamiltonian::parse("qubits 2\nabc ZZ\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(PauliSumHamiltonian::parse("0.5 ZZ\n").is_err());
    }

    #[test]
    fn pauli_sum_products() {
        // (X + iY)/2 · (X − iY)/2 = (I + Z)/2
        let half = Complex64::new(0.5, 0.0);
        let mut a = PauliSum::term(half, ps("X"));
        a.add_term(Complex64::new(0.0, 0.5), ps("Y"));
        let prod = a.mul(&a.adjoint());
        assert!((prod.coefficient(&ps("I")) - half).norm() < 1e-15);
        assert!((prod.coefficient(&ps("Z")) - half).norm() < 1e-15);
        assert!(prod.coefficient(&ps("X")).norm() < 1e-15);
    }

    #[test]
    fn non_hermitian_sum_is_rejected() {
        let s = PauliSum::term(Complex64::new(0.0, 1.0), ps("XZ"));
        assert!(matches!(s.into_hamiltonian(1e-8), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = (1..6).map(|k| (k as f64, 3.0 * (k as f64).powi(2))).collect();
        assert!((loglog_slope(&pts).unwrap() - 2.0).abs() < 1e-12);
    }
}
