use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use pfg_core::circuit::{export_text, import_text, Circuit};
use pfg_core::frame::SignedFrame;
use pfg_core::ham::{
    bose_hubbard, fermi_hubbard, vibronic, BosonEncoding, EncodingKind, FermionMapping, PauliSumHamiltonian,
};
use pfg_core::manifest::RotationManifest;
use pfg_core::synth::{synth, synth_baseline, CancelConfig, SynthConfig, SynthOutput};
use pfg_core::verify::check_path_equivalence;
use pfg_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn encoding(name: &str, levels: usize) -> PyResult<BosonEncoding> {
    let kind = match name {
        "std" => EncodingKind::StandardBinary,
        "gray" => EncodingKind::Gray,
        other => return Err(PyValueError::new_err(format!("unknown encoding {other:?}, expected \"std\" or \"gray\""))),
    };
    BosonEncoding::new(kind, levels).map_err(py_err)
}

/// A real linear combination of Pauli strings.
#[pyclass(frozen, module = "pfgsynth")]
struct Hamiltonian {
    inner: PauliSumHamiltonian,
}

#[pymethods]
impl Hamiltonian {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: PauliSumHamiltonian::parse(text).map_err(py_err)? })
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    #[getter]
    fn n_terms(&self) -> usize {
        self.inner.n_terms()
    }

    /// `(coefficient, dense pauli)` pairs in canonical order.
    fn terms(&self) -> Vec<(f64, String)> {
        self.inner.terms().iter().map(|(c, p)| (*c, p.to_dense_string())).collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __len__(&self) -> usize {
        self.inner.n_terms()
    }

    fn __repr__(&self) -> String {
        format!("Hamiltonian(n_qubits={}, n_terms={})", self.inner.n_qubits(), self.inner.n_terms())
    }
}

#[pyfunction]
#[pyo3(signature = (sites, mapping = "jw", t = 1.0, u = 4.0, periodic = true))]
fn fermi_hubbard_model(sites: usize, mapping: &str, t: f64, u: f64, periodic: bool) -> PyResult<Hamiltonian> {
    let mapping = match mapping {
        "jw" => FermionMapping::JordanWigner,
        "bk" => FermionMapping::BravyiKitaev,
        other => return Err(PyValueError::new_err(format!("unknown mapping {other:?}, expected \"jw\" or \"bk\""))),
    };
    let inner = fermi_hubbard(sites, t, u, mapping, periodic).map_err(py_err)?;
    Ok(Hamiltonian { inner })
}

#[pyfunction]
#[pyo3(signature = (sites, levels = 4, encoding = "std", t = 1.0, u = 1.0))]
fn bose_hubbard_model(sites: usize, levels: usize, encoding: &str, t: f64, u: f64) -> PyResult<Hamiltonian> {
    let enc = self::encoding(encoding, levels)?;
    Ok(Hamiltonian { inner: bose_hubbard(sites, t, u, &enc).map_err(py_err)? })
}

#[pyfunction]
#[pyo3(signature = (modes, levels = 4, encoding = "std", seed = 0, displaced = true))]
fn vibronic_model(modes: usize, levels: usize, encoding: &str, seed: u64, displaced: bool) -> PyResult<Hamiltonian> {
    let enc = self::encoding(encoding, levels)?;
    Ok(Hamiltonian { inner: vibronic(modes, &enc, seed, displaced).map_err(py_err)? })
}

/// One synthesized Trotter step.
#[pyclass(frozen, module = "pfgsynth")]
struct Step {
    out: SynthOutput,
}

#[pymethods]
impl Step {
    #[getter]
    fn tqe_count(&self) -> usize {
        self.out.metrics.tqe_count
    }

    #[getter]
    fn tqe_per_term(&self) -> f64 {
        self.out.metrics.tqe_per_term
    }

    #[getter]
    fn depth_all_gates(&self) -> u64 {
        self.out.metrics.depth_all_gates
    }

    #[getter]
    fn depth_tqe_only(&self) -> u64 {
        self.out.metrics.depth_tqe_only
    }

    #[getter]
    fn rotation_count(&self) -> usize {
        self.out.metrics.rotation_count
    }

    /// Circuit text; `expand=True` rewrites TQE gates as CX plus single-qubit gates.
    #[pyo3(signature = (expand = false))]
    fn circuit(&self, expand: bool) -> String {
        export_text(&self.out.circuit, expand)
    }

    fn manifest(&self) -> String {
        self.out.manifest.to_text()
    }

    /// Dense check of the step; returns `(passed, frobenius distance)`.
    #[pyo3(signature = (tolerance = 1e-9))]
    fn verify(&self, py: Python<'_>, tolerance: f64) -> PyResult<(bool, f64)> {
        let out = &self.out;
        let rep = py
            .detach(|| check_path_equivalence(&out.circuit, &out.manifest.records, &out.final_frame, tolerance))
            .map_err(py_err)?;
        Ok((rep.passed, rep.frobenius))
    }

    fn __repr__(&self) -> String {
        format!("Step(tqe_count={}, depth_tqe_only={})", self.out.metrics.tqe_count, self.out.metrics.depth_tqe_only)
    }
}

#[pyfunction]
#[pyo3(signature = (hamiltonian, method = "pfg", credit = 0.1, dt = 1.0, close_cycle = false, retrace = false))]
fn synthesize(
    py: Python<'_>,
    hamiltonian: &Hamiltonian,
    method: &str,
    credit: f64,
    dt: f64,
    close_cycle: bool,
    retrace: bool,
) -> PyResult<Step> {
    let h = &hamiltonian.inner;
    let out = match method {
        "pfg" => {
            let cfg = SynthConfig { credit, dt, close_cycle, retrace, ..Default::default() };
            py.detach(|| synth(h, &cfg))
        }
        "staircase" => {
            if close_cycle || retrace {
                return Err(PyValueError::new_err("close_cycle and retrace apply to method \"pfg\""));
            }
            py.detach(|| synth_baseline(h, dt, &CancelConfig::default()))
        }
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}, expected \"pfg\" or \"staircase\""))),
    }
    .map_err(py_err)?;
    Ok(Step { out })
}

/// Checks circuit text against manifest text; returns `(passed, frobenius distance)`.
#[pyfunction]
#[pyo3(signature = (circuit, manifest, tolerance = 1e-9))]
fn verify_text(circuit: &str, manifest: &str, tolerance: f64) -> PyResult<(bool, f64)> {
    let circuit: Circuit = import_text(circuit).map_err(py_err)?;
    let manifest = RotationManifest::parse(manifest).map_err(py_err)?;
    let mut frame = SignedFrame::origin(circuit.n_qubits());
    frame.backward_apply_all(circuit.clifford_gates()).map_err(py_err)?;
    let rep = check_path_equivalence(&circuit, &manifest.records, &frame, tolerance).map_err(py_err)?;
    Ok((rep.passed, rep.frobenius))
}

#[pymodule]
fn pfgsynth(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Hamiltonian>()?;
    m.add_class::<Step>()?;
    m.add_function(wrap_pyfunction!(fermi_hubbard_model, m)?)?;
    m.add_function(wrap_pyfunction!(bose_hubbard_model, m)?)?;
    m.add_function(wrap_pyfunction!(vibronic_model, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(verify_text, m)?)?;
    Ok(())
}
