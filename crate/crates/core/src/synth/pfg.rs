//! Ultra-greedy walk on the Pauli frame graph.
//!
//! Each round first rotates every active term whose coordinates have
//! support one, then picks among the TQE gates that shrink a
//! minimum-support term the one minimizing
//! `⟨ΔSupp⟩ − c · |pace|`, where `⟨ΔSupp⟩` averages the support change over
//! all active terms and `pace` is the gate's ASAP start relative to the
//! current leading edge.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::SynthOutput;
use crate::circuit::{clifford_circuit_of_frame, metrics, Circuit, Gate, Rotation};
use crate::error::{Error, Result};
use crate::frame::{reduction_table, tqe_action_table, CliffordGate, CoordinateVector, SignedFrame, TqeGate};
use crate::ham::PauliSumHamiltonian;
use crate::manifest::{RotationManifest, RotationRecord};

/// Candidate-count × active-term product above which costs are evaluated
/// on the rayon pool.
const PARALLEL_WORK_THRESHOLD: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Lowest `(qubit_i, qubit_j, type_i, type_j)` with `X < Y < Z`.
    #[default]
    Lexicographic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SynthConfig {
    /// Parallelization credit `c ≥ 0`.
    pub credit: f64,
    /// Return to the origin frame at the end of the step.
    pub close_cycle: bool,
    /// Append the mirrored circuit; each half then covers `dt / 2`.
    pub retrace: bool,
    pub dt: f64,
    pub tie_break: TieBreak,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self { credit: 0.1, close_cycle: false, retrace: false, dt: 1.0, tie_break: TieBreak::Lexicographic }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.credit.is_finite() && self.credit >= 0.0) {
            return Err(Error::InvalidParameter(format!("credit must be a non-negative number, got {}", self.credit)));
        }
        if !self.dt.is_finite() {
            return Err(Error::InvalidParameter(format!("dt must be finite, got {}", self.dt)));
        }
        if self.retrace && self.close_cycle {
            return Err(Error::InvalidParameter("retrace and close_cycle are mutually exclusive".into()));
        }
        Ok(())
    }
}

/// One Hamiltonian term tracked through the walk.
#[derive(Clone, Debug, PartialEq)]
pub struct TermState {
    pub term_id: usize,
    pub coefficient: f64,
    pub coords: CoordinateVector,
    /// Sign of the image `W p W†`.
    pub negative: bool,
    pub active: bool,
}

/// Per-qubit finish times with unit gate durations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchedulerState {
    pub last_finish: Vec<u64>,
    pub leading_edge: u64,
}

impl SchedulerState {
    pub fn new(n_qubits: usize) -> Self {
        Self { last_finish: vec![0; n_qubits], leading_edge: 0 }
    }

    pub fn start_time(&self, qubits: &[usize]) -> u64 {
        qubits.iter().map(|&q| self.last_finish[q]).max().unwrap_or(0)
    }

    /// `start − leading_edge`, never positive.
    pub fn pace(&self, qubits: &[usize]) -> i64 {
        self.start_time(qubits) as i64 - self.leading_edge as i64
    }

    pub fn place(&mut self, qubits: &[usize]) {
        let t = self.start_time(qubits) + 1;
        for &q in qubits {
            self.last_finish[q] = t;
        }
        self.leading_edge = self.leading_edge.max(t);
    }
}

/// Mutable walk state: frame, terms, schedule and the emitted output.
pub struct Walk {
    pub frame: SignedFrame,
    pub terms: Vec<TermState>,
    pub sched: SchedulerState,
    pub circuit: Circuit,
    pub records: Vec<RotationRecord>,
    dt: f64,
    originals: Vec<crate::pauli::PauliString>,
}

impl Walk {
    pub fn new(h: &PauliSumHamiltonian, dt: f64) -> Self {
        let n = h.n_qubits();
        let terms = h
            .terms()
            .iter()
            .enumerate()
            .map(|(term_id, (c, p))| TermState {
                term_id,
                coefficient: *c,
                coords: CoordinateVector::from_image(p.clone()),
                negative: false,
                active: true,
            })
            .collect();
        Self {
            frame: SignedFrame::origin(n),
            terms,
            sched: SchedulerState::new(n),
            circuit: Circuit::new(n),
            records: Vec::new(),
            dt,
            originals: h.terms().iter().map(|(_, p)| p.clone()).collect(),
        }
    }

    pub fn n_active(&self) -> usize {
        self.terms.iter().filter(|t| t.active).count()
    }

    /// Rotates and deactivates every active support-one term, by term id.
    pub fn emit_ready(&mut self) -> Result<()> {
        for idx in 0..self.terms.len() {
            if self.terms[idx].active && self.terms[idx].coords.support() == 1 {
                self.emit_rotation(idx)?;
            }
        }
        Ok(())
    }

    /// Emits the rotation for a support-one term: `RZ` for local bits
    /// `(0,1)`, `RX` for `(1,0)`, `RY` for `(1,1)`, angle `±2·θ·dt`.
    pub fn emit_rotation(&mut self, idx: usize) -> Result<()> {
        let term = &self.terms[idx];
        let support = term.coords.support_qubits();
        let &[q] = support.as_slice() else {
            return Err(Error::Support(support.len()));
        };
        let axis = term.coords.kind(q);
        let sign = if term.negative { -1.0 } else { 1.0 };
        let rot = Rotation::new(axis, q, sign * 2.0 * term.coefficient * self.dt, Some(term.term_id))?;
        self.records.push(RotationRecord {
            term_id: term.term_id,
            pauli: self.originals[idx].clone(),
            angle: sign * rot.angle,
        });
        self.terms[idx].active = false;
        self.sched.place(&[q]);
        self.circuit.push(rot)?;
        Ok(())
    }

    /// Minimum support over active terms, if any remain.
    pub fn min_support(&self) -> Option<usize> {
        self.terms.iter().filter(|t| t.active).map(|t| t.coords.support()).min()
    }

    /// Reducing TQE gates of every minimum-support term, sorted and deduplicated.
    pub fn candidate_gates(&self, min_support: usize) -> Vec<TqeGate> {
        let table = reduction_table();
        let mut out = BTreeSet::new();
        for t in self.terms.iter().filter(|t| t.active && t.coords.support() == min_support) {
            let qs = t.coords.support_qubits();
            for (a, &i) in qs.iter().enumerate() {
                for &j in &qs[a + 1..] {
                    for &(ti, tj) in &table[t.coords.local_config(i, j) as usize] {
                        out.insert(TqeGate { qubit_i: i, qubit_j: j, type_i: ti, type_j: tj });
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Total support change over active terms if `gate` were applied.
    pub fn support_delta(&self, gate: &TqeGate) -> i64 {
        let row = &tqe_action_table()[gate.type_index()];
        let mut delta = 0i64;
        for t in self.terms.iter().filter(|t| t.active) {
            let c = t.coords.local_config(gate.qubit_i, gate.qubit_j);
            if c != 0 {
                delta += local_weight(row[c as usize].config) - local_weight(c);
            }
        }
        delta
    }

    pub fn cost(&self, gate: &TqeGate, credit: f64) -> f64 {
        let n_active = self.n_active().max(1) as f64;
        let pace = self.sched.pace(&[gate.qubit_i, gate.qubit_j]);
        self.support_delta(gate) as f64 / n_active - credit * pace.unsigned_abs() as f64
    }

    /// Argmin of the cost; ties go to the earliest candidate.
    pub fn choose(&self, candidates: &[TqeGate], credit: f64) -> Option<TqeGate> {
        let work = candidates.len() * self.terms.len();
        let costs: Vec<f64> = if work >= PARALLEL_WORK_THRESHOLD {
            candidates.par_iter().map(|g| self.cost(g, credit)).collect()
        } else {
            candidates.iter().map(|g| self.cost(g, credit)).collect()
        };
        let mut best: Option<(usize, f64)> = None;
        for (k, &c) in costs.iter().enumerate() {
            if best.is_none_or(|(_, b)| c < b) {
                best = Some((k, c));
            }
        }
        best.map(|(k, _)| candidates[k])
    }

    /// Appends a Clifford gate: frame, coordinates, signs, schedule, circuit.
    pub fn apply(&mut self, gate: CliffordGate) -> Result<()> {
        self.frame.backward_apply(&gate)?;
        for t in self.terms.iter_mut().filter(|t| t.active) {
            t.negative ^= t.coords.update(&gate);
        }
        let qs: Vec<usize> = gate.qubits().iter().collect();
        self.sched.place(&qs);
        self.circuit.push(gate)?;
        Ok(())
    }
}

fn local_weight(config: u8) -> i64 {
    (config & 0b1100 != 0) as i64 + (config & 0b0011 != 0) as i64
}

/// Gates reversed with `P ↔ P†` and rotation angles kept.
pub fn retrace(circuit: &Circuit) -> Circuit {
    let mut out = circuit.clone();
    for g in circuit.gates().iter().rev() {
        out.push_unchecked(match g {
            Gate::Clifford(c) => Gate::Clifford(c.inverse()),
            Gate::Rotation(r) => Gate::Rotation(*r),
        });
    }
    out
}

fn run_walk(h: &PauliSumHamiltonian, credit: f64, dt: f64) -> Result<Walk> {
    let mut walk = Walk::new(h, dt);
    loop {
        walk.emit_ready()?;
        let Some(m) = walk.min_support() else { break };
        let candidates = walk.candidate_gates(m);
        let gate = walk.choose(&candidates, credit).ok_or(Error::Support(m))?;
        walk.apply(CliffordGate::Tqe(gate))?;
    }
    Ok(walk)
}

/// Synthesizes one Trotter step of `exp(-i dt H)`.
pub fn synth(h: &PauliSumHamiltonian, cfg: &SynthConfig) -> Result<SynthOutput> {
    cfg.validate()?;
    let step_dt = if cfg.retrace { cfg.dt / 2.0 } else { cfg.dt };
    let mut walk = run_walk(h, cfg.credit, step_dt)?;
    let mut records = std::mem::take(&mut walk.records);
    let (circuit, final_frame) = if cfg.close_cycle {
        let back = clifford_circuit_of_frame(&walk.frame)?;
        for g in back.clifford_gates() {
            walk.apply(*g)?;
        }
        debug_assert!(walk.frame.is_origin());
        (walk.circuit, walk.frame)
    } else if cfg.retrace {
        let mirrored: Vec<RotationRecord> = records.iter().rev().cloned().collect();
        records.extend(mirrored);
        let full = retrace(&walk.circuit);
        let mut frame = walk.frame;
        for g in full.gates()[walk.circuit.len()..].iter().filter_map(Gate::as_clifford) {
            frame.backward_apply(g)?;
        }
        (full, frame)
    } else {
        (walk.circuit, walk.frame)
    };
    let metrics = metrics(&circuit, h.n_terms().max(1))?;
    Ok(SynthOutput { circuit, final_frame, manifest: RotationManifest::new(h.n_qubits(), records), metrics })
}
