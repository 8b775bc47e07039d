//! Dense-matrix oracles: circuit unitaries, rotation products, path
//! equivalence, tableau cross-checks and Trotter error.
//!
//! Basis index bit `N-1-q` holds qubit `q`, so qubit 0 is the leftmost tensor
//! factor. Comparisons are up to a global phase, aligned by
//! `φ = arg Tr(B† A)`, which minimizes the Frobenius distance.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::{clifford_circuit_of_frame, expand_tqe, Circuit, Gate, Rotation};
use crate::error::{Error, Result};
use crate::frame::{conjugate_signed, CliffordGate, SignedFrame};
use crate::ham::{loglog_slope, PauliSumHamiltonian};
use crate::manifest::RotationRecord;
use crate::pauli::{PauliKind, PauliString, SignedPauli};

pub const MAX_DENSE_QUBITS: usize = 12;
pub const PATH_CHECK_MAX_QUBITS: usize = 10;
pub const TABLEAU_CHECK_MAX_QUBITS: usize = 6;

type CMat = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn check_size(n_qubits: usize, cap: usize) -> Result<()> {
    if n_qubits > cap {
        return Err(Error::SizeCap { n_qubits, cap });
    }
    Ok(())
}

fn i_pow(k: u32) -> Complex64 {
    [ONE, I, -ONE, -I][(k % 4) as usize]
}

/// `(x, z)` bit masks in basis-index convention.
fn masks(p: &PauliString) -> (usize, usize) {
    let n = p.n_qubits();
    let mut x = 0;
    let mut z = 0;
    for q in p.support() {
        let (a, b) = p.get(q).bits();
        let bit = 1 << (n - 1 - q);
        if a {
            x |= bit;
        }
        if b {
            z |= bit;
        }
    }
    (x, z)
}

pub fn pauli_matrix(p: &PauliString) -> Result<CMat> {
    check_size(p.n_qubits(), MAX_DENSE_QUBITS)?;
    let dim = 1usize << p.n_qubits();
    let (x, z) = masks(p);
    let y = i_pow((x & z).count_ones());
    let mut m = CMat::zeros(dim, dim);
    for e in 0..dim {
        m[(e ^ x, e)] = if (z & e).count_ones() % 2 == 1 { -y } else { y };
    }
    Ok(m)
}

pub fn signed_pauli_matrix(p: &SignedPauli) -> Result<CMat> {
    Ok(pauli_matrix(p.pauli())? * i_pow(p.phase_exp() as u32))
}

fn single_qubit_matrix(gate: &CliffordGate) -> [[Complex64; 2]; 2] {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    match gate {
        CliffordGate::H(_) => [[h, h], [h, -h]],
        CliffordGate::P(_) => [[ONE, ZERO], [ZERO, I]],
        CliffordGate::Pdg(_) => [[ONE, ZERO], [ZERO, -I]],
        CliffordGate::Pauli(PauliKind::X, _) => [[ZERO, ONE], [ONE, ZERO]],
        CliffordGate::Pauli(PauliKind::Y, _) => [[ZERO, -I], [I, ZERO]],
        CliffordGate::Pauli(PauliKind::Z, _) => [[ONE, ZERO], [ZERO, -ONE]],
        _ => [[ONE, ZERO], [ZERO, ONE]],
    }
}

fn rotation_matrix(r: &Rotation) -> [[Complex64; 2]; 2] {
    let (s, c) = (r.angle / 2.0).sin_cos();
    let c = Complex64::new(c, 0.0);
    match r.axis {
        PauliKind::X => [[c, -I * s], [-I * s, c]],
        PauliKind::Y => [[c, Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), c]],
        _ => [[c - I * s, ZERO], [ZERO, c + I * s]],
    }
}

/// Dense unitary on at most [`MAX_DENSE_QUBITS`] qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    n_qubits: usize,
    matrix: CMat,
}

impl DenseUnitary {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits, MAX_DENSE_QUBITS)?;
        let dim = 1 << n_qubits;
        Ok(Self { n_qubits, matrix: CMat::identity(dim, dim) })
    }

    pub fn from_matrix(n_qubits: usize, matrix: CMat) -> Result<Self> {
        check_size(n_qubits, MAX_DENSE_QUBITS)?;
        let dim = 1 << n_qubits;
        if matrix.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(matrix.nrows(), dim));
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self { n_qubits: self.n_qubits, matrix: self.matrix.adjoint() }
    }

    /// Frobenius norm of `U†U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.matrix.nrows();
        (self.matrix.adjoint() * &self.matrix - CMat::identity(dim, dim)).norm()
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    fn apply_1q(&mut self, q: usize, g: [[Complex64; 2]; 2]) {
        let dim = self.matrix.nrows();
        let mask = self.bit(q);
        for col in self.matrix.as_mut_slice().chunks_mut(dim) {
            for r in (0..dim).filter(|r| r & mask == 0) {
                let (a, b) = (col[r], col[r | mask]);
                col[r] = g[0][0] * a + g[0][1] * b;
                col[r | mask] = g[1][0] * a + g[1][1] * b;
            }
        }
    }

    fn apply_cx(&mut self, control: usize, target: usize) {
        let dim = self.matrix.nrows();
        let (c, t) = (self.bit(control), self.bit(target));
        for col in self.matrix.as_mut_slice().chunks_mut(dim) {
            for r in (0..dim).filter(|r| r & c != 0 && r & t == 0) {
                col.swap(r, r | t);
            }
        }
    }

    fn apply_swap(&mut self, a: usize, b: usize) {
        let dim = self.matrix.nrows();
        let (ma, mb) = (self.bit(a), self.bit(b));
        for col in self.matrix.as_mut_slice().chunks_mut(dim) {
            for r in (0..dim).filter(|r| r & ma != 0 && r & mb == 0) {
                col.swap(r, r ^ ma ^ mb);
            }
        }
    }

    /// Left-multiplies by `exp(-i θ/2 P)`.
    pub fn apply_pauli_rotation(&mut self, p: &PauliString, angle: f64) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(p.n_qubits(), self.n_qubits));
        }
        let dim = self.matrix.nrows();
        let (x, z) = masks(p);
        let y = i_pow((x & z).count_ones());
        let (s, c) = (angle / 2.0).sin_cos();
        let mut buf = vec![ZERO; dim];
        for col in self.matrix.as_mut_slice().chunks_mut(dim) {
            for e in 0..dim {
                let ph = if (z & e).count_ones() % 2 == 1 { -y } else { y };
                buf[e ^ x] = ph * col[e];
            }
            for (v, pv) in col.iter_mut().zip(&buf) {
                *v = *v * c - I * s * pv;
            }
        }
        Ok(())
    }

    pub fn apply_clifford(&mut self, gate: &CliffordGate) -> Result<()> {
        gate.check(self.n_qubits)?;
        match *gate {
            CliffordGate::H(q) | CliffordGate::P(q) | CliffordGate::Pdg(q) | CliffordGate::Pauli(_, q) => {
                self.apply_1q(q, single_qubit_matrix(gate))
            }
            CliffordGate::Swap(a, b) => self.apply_swap(a, b),
            CliffordGate::Tqe(t) if t.type_i == PauliKind::Z && t.type_j == PauliKind::X => {
                self.apply_cx(t.qubit_i, t.qubit_j)
            }
            CliffordGate::Tqe(t) if t.type_i == PauliKind::X && t.type_j == PauliKind::Z => {
                self.apply_cx(t.qubit_j, t.qubit_i)
            }
            CliffordGate::Tqe(t) => {
                for g in expand_tqe(&t) {
                    self.apply_clifford(&g)?;
                }
            }
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        match gate {
            Gate::Clifford(g) => self.apply_clifford(g),
            Gate::Rotation(r) => {
                if r.qubit >= self.n_qubits {
                    return Err(Error::QubitIndex { index: r.qubit, n_qubits: self.n_qubits });
                }
                self.apply_1q(r.qubit, rotation_matrix(r));
                Ok(())
            }
        }
    }
}

pub fn dense_of_circuit(circuit: &Circuit) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(circuit.n_qubits())?;
    for g in circuit.gates() {
        u.apply_gate(g)?;
    }
    Ok(u)
}

/// `Π exp(-i θ/2 p)` with the first list entry applied first.
pub fn dense_of_rotation_product(n_qubits: usize, rotations: &[(PauliString, f64)]) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(n_qubits)?;
    for (p, angle) in rotations {
        u.apply_pauli_rotation(p, *angle)?;
    }
    Ok(u)
}

/// `e^{iφ}` with `φ = arg Tr(B† A)`; one when the trace vanishes.
pub fn alignment_phase(a: &CMat, b: &CMat) -> Complex64 {
    let tr = (b.adjoint() * a).trace();
    if tr.norm() < 1e-300 {
        ONE
    } else {
        tr / tr.norm()
    }
}

/// `A - e^{iφ} B` for the aligning phase.
pub fn phase_aligned_difference(a: &CMat, b: &CMat) -> CMat {
    a - b * alignment_phase(a, b)
}

pub fn frobenius_distance_up_to_phase(a: &CMat, b: &CMat) -> f64 {
    phase_aligned_difference(a, b).norm()
}

pub fn max_defect_up_to_phase(a: &CMat, b: &CMat) -> f64 {
    phase_aligned_difference(a, b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn spectral_norm(m: &CMat) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

/// Dense `Σ c_α p_α`.
pub fn hamiltonian_matrix(h: &PauliSumHamiltonian) -> Result<CMat> {
    check_size(h.n_qubits(), MAX_DENSE_QUBITS)?;
    let dim = 1 << h.n_qubits();
    let mut m = CMat::zeros(dim, dim);
    for (c, p) in h.terms() {
        let (x, z) = masks(p);
        let y = i_pow((x & z).count_ones()) * *c;
        for e in 0..dim {
            m[(e ^ x, e)] += if (z & e).count_ones() % 2 == 1 { -y } else { y };
        }
    }
    Ok(m)
}

/// Ascending eigenvalues.
pub fn spectrum(h: &PauliSumHamiltonian) -> Result<Vec<f64>> {
    let mut ev: Vec<f64> = hamiltonian_matrix(h)?.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// `exp(-i t H)` by eigendecomposition.
pub fn evolution(h: &PauliSumHamiltonian, t: f64) -> Result<CMat> {
    let eig = hamiltonian_matrix(h)?.symmetric_eigen();
    let phases = eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -t * l));
    let v = &eig.eigenvectors;
    Ok(v * CMat::from_diagonal(&phases) * v.adjoint())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub passed: bool,
    pub frobenius: f64,
    pub max_defect: f64,
}

/// Checks `U_circuit · R⁻¹ = V` up to global phase, where `R` is the product of
/// the recorded rotations on their original Paulis and `V` is the Clifford
/// encoded by `final_frame`.
pub fn check_path_equivalence(
    circuit: &Circuit,
    rotations: &[RotationRecord],
    final_frame: &SignedFrame,
    tolerance: f64,
) -> Result<EquivalenceReport> {
    let n = circuit.n_qubits();
    check_size(n, PATH_CHECK_MAX_QUBITS)?;
    if final_frame.n_qubits() != n {
        return Err(Error::DimensionMismatch(final_frame.n_qubits(), n));
    }
    let u = dense_of_circuit(circuit)?;
    let rots: Vec<(PauliString, f64)> = rotations.iter().map(|r| (r.pauli.clone(), r.angle)).collect();
    let r = dense_of_rotation_product(n, &rots)?;
    let d = u.matrix() * r.matrix().adjoint();
    // The return circuit C satisfies C·V = I, so V = C†.
    let v = dense_of_circuit(&clifford_circuit_of_frame(final_frame)?)?.adjoint();
    let frobenius = frobenius_distance_up_to_phase(&d, v.matrix());
    let max_defect = max_defect_up_to_phase(&d, v.matrix());
    Ok(EquivalenceReport { passed: frobenius <= tolerance, frobenius, max_defect })
}

/// Evolves the forward tableau of the circuit's Clifford gates and compares
/// every signed image `U Z_i U†`, `U X_i U†` against dense conjugation.
pub fn tableau_cross_check(circuit: &Circuit) -> Result<bool> {
    let n = circuit.n_qubits();
    check_size(n, TABLEAU_CHECK_MAX_QUBITS)?;
    let mut rows: Vec<SignedPauli> = (0..n)
        .flat_map(|q| {
            [PauliKind::Z, PauliKind::X].map(|k| SignedPauli::hermitian(PauliString::single(n, q, k)))
        })
        .collect();
    let mut u = DenseUnitary::identity(n)?;
    for g in circuit.clifford_gates() {
        u.apply_clifford(g)?;
        for r in rows.iter_mut() {
            conjugate_signed(r, g);
        }
    }
    let m = u.matrix();
    for (idx, row) in rows.iter().enumerate() {
        let kind = if idx % 2 == 0 { PauliKind::Z } else { PauliKind::X };
        let gen = pauli_matrix(&PauliString::single(n, idx / 2, kind))?;
        let dense = m * gen * m.adjoint();
        if (dense - signed_pauli_matrix(row)?).norm() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrotterReport {
    pub dts: Vec<f64>,
    pub errors: Vec<f64>,
    /// Least-squares slope of `ln error` against `ln dt`.
    pub slope: Option<f64>,
}

/// `‖exp(-i dt H) - U(dt)‖₂` (after phase alignment) for each `dt`.
pub fn trotter_error<F>(h: &PauliSumHamiltonian, step: F, dts: &[f64]) -> Result<TrotterReport>
where
    F: Fn(f64) -> Result<Circuit>,
{
    check_size(h.n_qubits(), PATH_CHECK_MAX_QUBITS)?;
    let mut errors = Vec::with_capacity(dts.len());
    for &dt in dts {
        let exact = evolution(h, dt)?;
        let u = dense_of_circuit(&step(dt)?)?;
        errors.push(spectral_norm(&phase_aligned_difference(u.matrix(), &exact)));
    }
    let pts: Vec<(f64, f64)> = dts.iter().copied().zip(errors.iter().copied()).collect();
    Ok(TrotterReport { dts: dts.to_vec(), slope: loglog_slope(&pts), errors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli;

    fn ps(s: &str) -> PauliString {
        parse_pauli(s, None).unwrap().into_pauli()
    }

    #[test]
    fn basic_circuits() {
        let u = dense_of_circuit(&Circuit::new(2)).unwrap();
        assert_eq!(u.matrix(), &CMat::identity(4, 4));

        let mut c = Circuit::new(2);
        c.push(CliffordGate::cx(0, 1).unwrap()).unwrap();
        let m = dense_of_circuit(&c).unwrap().into_matrix();
        let perm = [0, 1, 3, 2];
        for (col, &row) in perm.iter().enumerate() {
            assert_eq!(m[(row, col)], ONE);
        }

        let mut c = Circuit::new(1);
        c.push(CliffordGate::H(0)).unwrap();
        c.push(CliffordGate::H(0)).unwrap();
        assert!((dense_of_circuit(&c).unwrap().into_matrix() - CMat::identity(2, 2)).norm() < 1e-15);
    }

    #[test]
    fn rotation_products() {
        let u = dense_of_rotation_product(1, &[(ps("Z"), std::f64::consts::PI)]).unwrap();
        let expect = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![-I, I]));
        assert!(frobenius_distance_up_to_phase(u.matrix(), &expect) < 1e-12);

        let a = (ps("ZZ"), 0.3);
        let b = (ps("ZI"), -0.7);
        let ab = dense_of_rotation_product(2, &[a.clone(), b.clone()]).unwrap();
        let ba = dense_of_rotation_product(2, &[b, a.clone()]).unwrap();
        assert!((ab.matrix() - ba.matrix()).norm() < 1e-12);

        let x = (ps("XI"), 0.4);
        let ax = dense_of_rotation_product(2, &[a.clone(), x.clone()]).unwrap();
        let xa = dense_of_rotation_product(2, &[x, a]).unwrap();
        assert!((ax.matrix() - xa.matrix()).norm() > 1e-3);
    }

    #[test]
    fn gate_rotation_agrees_with_pauli_rotation() {
        for axis in PauliKind::NON_IDENTITY {
            let mut c = Circuit::new(2);
            c.push(Rotation::new(axis, 1, 0.9, None).unwrap()).unwrap();
            let via_gate = dense_of_circuit(&c).unwrap();
            let via_pauli = dense_of_rotation_product(2, &[(PauliString::single(2, 1, axis), 0.9)]).unwrap();
            assert!((via_gate.matrix() - via_pauli.matrix()).norm() < 1e-14);
        }
    }

    #[test]
    fn single_p_gate_tableau() {
        let mut c = Circuit::new(1);
        c.push(CliffordGate::P(0)).unwrap();
        assert!(tableau_cross_check(&c).unwrap());
        assert!(tableau_cross_check(&Circuit::new(3)).unwrap());
    }

    #[test]
    fn size_caps() {
        assert!(matches!(DenseUnitary::identity(13), Err(Error::SizeCap { .. })));
        let frame = SignedFrame::origin(11);
        assert!(check_path_equivalence(&Circuit::new(11), &[], &frame, 1e-9).is_err());
    }
}
