//! Truncated bosonic modes encoded on qubits, Bose-Hubbard and vibronic
//! (Franck-Condon) models.
//!
//! A mode with `d` levels uses `log2 d` contiguous qubits, most significant
//! bit first. Level `l` is stored as the bit pattern `l` (standard binary) or
//! `l ^ (l >> 1)` (Gray code).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{PauliSum, PauliSumHamiltonian, DEFAULT_DROP_THRESHOLD};
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EncodingKind {
    StandardBinary,
    Gray,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BosonEncoding {
    kind: EncodingKind,
    levels: usize,
}

impl BosonEncoding {
    pub fn new(kind: EncodingKind, levels: usize) -> Result<Self> {
        if levels < 2 || !levels.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("bosonic cutoff must be a power of two >= 2, got {levels}")));
        }
        Ok(Self { kind, levels })
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn qubits_per_mode(&self) -> usize {
        self.levels.trailing_zeros() as usize
    }

    /// Computational-basis index storing level `l`.
    pub fn code(&self, level: usize) -> usize {
        match self.kind {
            EncodingKind::StandardBinary => level,
            EncodingKind::Gray => level ^ (level >> 1),
        }
    }

    /// Reorders rows and columns of a level-basis operator into the qubit basis.
    pub fn permute(&self, op: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let d = self.levels;
        let mut out = DMatrix::zeros(d, d);
        for l in 0..d {
            for m in 0..d {
                out[(self.code(l), self.code(m))] = op[(l, m)];
            }
        }
        out
    }
}

/// Truncated annihilation and creation matrices `(b, b†)` with
/// `b_{l-1,l} = sqrt(l)`.
pub fn ladder_matrices(levels: usize) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let mut b = DMatrix::zeros(levels, levels);
    for l in 1..levels {
        b[(l - 1, l)] = Complex64::new((l as f64).sqrt(), 0.0);
    }
    let bd = b.adjoint();
    (b, bd)
}

/// Pauli decomposition of an arbitrary level-basis operator, without any
/// Hermiticity requirement.
pub fn encode_operator(op: &DMatrix<Complex64>, enc: &BosonEncoding) -> Result<PauliSum> {
    let d = enc.levels();
    if op.nrows() != d || op.ncols() != d {
        return Err(Error::DimensionMismatch(op.nrows(), d));
    }
    let m = enc.permute(op);
    let nq = enc.qubits_per_mode();
    let mut out = PauliSum::zero(nq);
    let bit = |v: usize, q: usize| (v >> (nq - 1 - q)) & 1 == 1;
    for x in 0..d {
        for z in 0..d {
            // Tr(P M) = Σ_f i^{|x&z|} (-1)^{|z&f|} M[f, f^x]
            let y_phase = match (x & z).count_ones() % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            let mut tr = Complex64::new(0.0, 0.0);
            for f in 0..d {
                let v = m[(f, f ^ x)];
                if (z & f).count_ones() % 2 == 1 {
                    tr -= v;
                } else {
                    tr += v;
                }
            }
            let coef = y_phase * tr / d as f64;
            if coef.norm() > 1e-15 {
                let p = PauliString::from_factors(nq, (0..nq).map(|q| (q, PauliKind::from_bits(bit(x, q), bit(z, q)))));
                out.add_term(coef, p);
            }
        }
    }
    Ok(out)
}

/// Pauli decomposition of a Hermitian level-basis operator.
pub fn bosonic_matrix_to_paulis(op: &DMatrix<Complex64>, enc: &BosonEncoding) -> Result<PauliSum> {
    let defect = (op - op.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if defect > 1e-12 {
        return Err(Error::NotHermitian(defect));
    }
    encode_operator(op, enc)
}

fn on_mode(op: &DMatrix<Complex64>, enc: &BosonEncoding, mode: usize, n_modes: usize) -> Result<PauliSum> {
    let nq = enc.qubits_per_mode();
    encode_operator(op, enc)?.embed(mode * nq, n_modes * nq)
}

/// `-t Σ_<ij> (b†_i b_j + b†_j b_i) + U Σ_i n_i (n_i - 1)` on a ring.
pub fn bose_hubbard(n_sites: usize, t: f64, u: f64, enc: &BosonEncoding) -> Result<PauliSumHamiltonian> {
    if n_sites < 2 {
        return Err(Error::InvalidParameter(format!("Bose-Hubbard needs at least 2 sites, got {n_sites}")));
    }
    let d = enc.levels();
    let (b, bd) = ladder_matrices(d);
    let n_op = &bd * &b;
    let interaction = &n_op * (&n_op - DMatrix::<Complex64>::identity(d, d));
    let mut bonds: Vec<(usize, usize)> = (0..n_sites - 1).map(|i| (i, i + 1)).collect();
    if n_sites > 2 {
        bonds.push((n_sites - 1, 0));
    }
    let mut h = PauliSum::zero(n_sites * enc.qubits_per_mode());
    for (i, j) in bonds {
        let hop = on_mode(&bd, enc, i, n_sites)?.mul(&on_mode(&b, enc, j, n_sites)?);
        h.add_assign(&hop.adjoint().scaled(Complex64::new(-t, 0.0)));
        h.add_assign(&hop.scaled(Complex64::new(-t, 0.0)));
    }
    if u != 0.0 {
        for i in 0..n_sites {
            h.add_assign(&on_mode(&interaction, enc, i, n_sites)?.scaled(Complex64::new(u, 0.0)));
        }
    }
    h.into_hamiltonian(DEFAULT_DROP_THRESHOLD)
}

/// Parameters of a displaced, rotated and rescaled set of oscillators:
/// `q_B = Ω_B S Ω_A⁻¹ q_A + δ`, `p_B = Ω_B⁻¹ S Ω_A p_A`, with
/// `Ω = diag(ω)^{1/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VibronicParams {
    pub s: DMatrix<f64>,
    pub omega_a: Vec<f64>,
    pub omega_b: Vec<f64>,
    pub delta: Vec<f64>,
}

impl VibronicParams {
    /// Seeded draw: `S` from the QR factor of a Gaussian matrix, frequencies
    /// uniform in `[0.5, 1.5]`, displacements uniform in `[-0.1, 0.1]`.
    pub fn random(n_modes: usize, seed: u64, displaced: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = DMatrix::from_fn(n_modes, n_modes, |_, _| rng.sample::<f64, _>(StandardNormal));
        let s = g.qr().q();
        let omega_a = (0..n_modes).map(|_| rng.random_range(0.5..=1.5)).collect();
        let omega_b = (0..n_modes).map(|_| rng.random_range(0.5..=1.5)).collect();
        let delta = (0..n_modes)
            .map(|_| {
                let v: f64 = rng.random_range(-0.1..=0.1);
                if displaced {
                    v
                } else {
                    0.0
                }
            })
            .collect();
        Self { s, omega_a, omega_b, delta }
    }

    pub fn n_modes(&self) -> usize {
        self.omega_a.len()
    }

    /// `(Ω_B S Ω_A⁻¹, Ω_B⁻¹ S Ω_A)`.
    pub fn transforms(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let m = self.n_modes();
        let a = DMatrix::from_fn(m, m, |j, k| self.omega_b[j].sqrt() * self.s[(j, k)] / self.omega_a[k].sqrt());
        let b = DMatrix::from_fn(m, m, |j, k| self.s[(j, k)] * self.omega_a[k].sqrt() / self.omega_b[j].sqrt());
        (a, b)
    }
}

fn quadratures(levels: usize) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let (b, bd) = ladder_matrices(levels);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let q = (&b + &bd) * Complex64::new(r, 0.0);
    let p = (&bd - &b) * Complex64::new(0.0, r);
    (q, p)
}

/// `½ Σ_j ω_Bj (q_Bj² + p_Bj²)` over `M` modes with the given parameters.
/// Same-mode squares use the truncated matrix product; the constant is
/// dropped.
pub fn vibronic_from_params(params: &VibronicParams, enc: &BosonEncoding) -> Result<PauliSumHamiltonian> {
    let m = params.n_modes();
    if m == 0 || params.s.shape() != (m, m) || params.omega_b.len() != m || params.delta.len() != m {
        return Err(Error::InvalidParameter("inconsistent vibronic parameter sizes".into()));
    }
    let (a, bp) = params.transforms();
    let (q, p) = quadratures(enc.levels());
    let q2 = &q * &q;
    let p2 = &p * &p;
    // Quadratic forms H = Σ_kl Cq_kl q_k q_l + Cp_kl p_k p_l + Σ_k L_k q_k.
    let cq = DMatrix::from_fn(m, m, |k, l| 0.5 * (0..m).map(|j| params.omega_b[j] * a[(j, k)] * a[(j, l)]).sum::<f64>());
    let cp = DMatrix::from_fn(m, m, |k, l| 0.5 * (0..m).map(|j| params.omega_b[j] * bp[(j, k)] * bp[(j, l)]).sum::<f64>());
    let lin: Vec<f64> = (0..m).map(|k| (0..m).map(|j| params.omega_b[j] * params.delta[j] * a[(j, k)]).sum()).collect();

    let qs: Vec<PauliSum> = (0..m).map(|k| on_mode(&q, enc, k, m)).collect::<Result<_>>()?;
    let ps: Vec<PauliSum> = (0..m).map(|k| on_mode(&p, enc, k, m)).collect::<Result<_>>()?;
    let real = |v: f64| Complex64::new(v, 0.0);
    let mut h = PauliSum::zero(m * enc.qubits_per_mode());
    for k in 0..m {
        h.add_assign(&on_mode(&q2, enc, k, m)?.scaled(real(cq[(k, k)])));
        h.add_assign(&on_mode(&p2, enc, k, m)?.scaled(real(cp[(k, k)])));
        if lin[k] != 0.0 {
            h.add_assign(&qs[k].clone().scaled(real(lin[k])));
        }
        for l in k + 1..m {
            h.add_assign(&qs[k].mul(&qs[l]).scaled(real(2.0 * cq[(k, l)])));
            h.add_assign(&ps[k].mul(&ps[l]).scaled(real(2.0 * cp[(k, l)])));
        }
    }
    h.into_hamiltonian(DEFAULT_DROP_THRESHOLD)
}

/// Seeded vibronic model on `n_modes` modes.
pub fn vibronic(n_modes: usize, enc: &BosonEncoding, seed: u64, displaced: bool) -> Result<PauliSumHamiltonian> {
    if n_modes < 2 {
        return Err(Error::InvalidParameter(format!("vibronic model needs at least 2 modes, got {n_modes}")));
    }
    vibronic_from_params(&VibronicParams::random(n_modes, seed, displaced), enc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enc(kind: EncodingKind, d: usize) -> BosonEncoding {
        BosonEncoding::new(kind, d).unwrap()
    }

    #[test]
    fn cutoff_must_be_power_of_two() {
        assert!(BosonEncoding::new(EncodingKind::Gray, 3).is_err());
        assert!(BosonEncoding::new(EncodingKind::Gray, 1).is_err());
        assert_eq!(enc(EncodingKind::Gray, 8).qubits_per_mode(), 3);
    }

    #[test]
    fn gray_codes() {
        let e = enc(EncodingKind::Gray, 8);
        let codes: Vec<_> = (0..8).map(|l| e.code(l)).collect();
        assert_eq!(codes, vec![0, 1, 3, 2, 6, 7, 5, 4]);
    }

    #[test]
    fn identity_and_number_operator() {
        for kind in [EncodingKind::StandardBinary, EncodingKind::Gray] {
            let e = enc(kind, 4);
            let id = bosonic_matrix_to_paulis(&DMatrix::identity(4, 4), &e).unwrap();
            assert_eq!(id.len(), 1);
            assert!((id.coefficient(&PauliString::identity(2)) - Complex64::new(1.0, 0.0)).norm() < 1e-15);

            let e2 = enc(kind, 2);
            let n = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]));
            let s = bosonic_matrix_to_paulis(&n, &e2).unwrap();
            assert_eq!(s.len(), 2);
            assert!((s.coefficient(&PauliString::single(1, 0, PauliKind::Z)) + Complex64::new(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let (b, _) = ladder_matrices(4);
        let e = enc(EncodingKind::StandardBinary, 4);
        assert!(matches!(bosonic_matrix_to_paulis(&b, &e), Err(Error::NotHermitian(_))));
        assert!(encode_operator(&b, &e).is_ok());
    }

    #[test]
    fn seeded_vibronic_is_reproducible() {
        let e = enc(EncodingKind::Gray, 4);
        let h1 = vibronic(3, &e, 7, true).unwrap();
        let h2 = vibronic(3, &e, 7, true).unwrap();
        assert_eq!(h1.to_text(), h2.to_text());
        assert_ne!(h1.to_text(), vibronic(3, &e, 8, true).unwrap().to_text());
    }

    #[test]
    fn random_rotation_is_orthogonal() {
        let p = VibronicParams::random(5, 3, true);
        let err = (&p.s.transpose() * &p.s - DMatrix::<f64>::identity(5, 5)).abs().max();
        assert!(err < 1e-12);
        assert!(p.omega_a.iter().chain(&p.omega_b).all(|w| (0.5..=1.5).contains(w)));
    }
}
