//! Reference pipeline: first-fit commuting groups, one CX staircase per term,
//! then peephole cancellation of dependency-adjacent gates.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::SynthOutput;
use crate::circuit::{metrics, wrap_angle, Circuit, Gate, Rotation};
use crate::error::{Error, Result};
use crate::frame::{CliffordGate, SignedFrame};
use crate::ham::PauliSumHamiltonian;
use crate::manifest::{RotationManifest, RotationRecord};
use crate::pauli::{PauliKind, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CancelConfig {
    pub time_limit: Duration,
    /// Maximum number of sweeps over the circuit.
    pub passes: usize,
}

impl Default for CancelConfig {
    fn default() -> Self {
        Self { time_limit: Duration::from_secs(60), passes: 64 }
    }
}

/// Greedy first-fit partition of term indices into mutually commuting groups.
pub fn commuting_groups(h: &PauliSumHamiltonian) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let terms = h.terms();
    'terms: for (idx, (_, p)) in terms.iter().enumerate() {
        for g in groups.iter_mut() {
            if g.iter().all(|&k| terms[k].1.commutes(p)) {
                g.push(idx);
                continue 'terms;
            }
        }
        groups.push(vec![idx]);
    }
    groups
}

/// `exp(-i angle/2 · term)` as basis changes, a CX chain onto the highest
/// support qubit, `RZ(angle)`, and the mirrored uncompute. Y factors use
/// `P†·H` before and `H·P` after.
pub fn staircase(term: &PauliString, angle: f64, term_id: Option<usize>) -> Result<Vec<Gate>> {
    let support = term.support();
    let Some(&top) = support.last() else {
        return Err(Error::InvalidParameter("cannot build a staircase for the identity".into()));
    };
    let mut pre: Vec<Gate> = Vec::new();
    for &q in &support {
        match term.get(q) {
            PauliKind::X => pre.push(CliffordGate::H(q).into()),
            PauliKind::Y => {
                pre.push(CliffordGate::Pdg(q).into());
                pre.push(CliffordGate::H(q).into());
            }
            _ => {}
        }
    }
    for w in support.windows(2) {
        pre.push(CliffordGate::cx(w[0], w[1])?.into());
    }
    let mut out = pre.clone();
    out.push(Rotation::new(PauliKind::Z, top, angle, term_id)?.into());
    out.extend(pre.iter().rev().map(|g| match g {
        Gate::Clifford(c) => Gate::Clifford(c.inverse()),
        g => *g,
    }));
    Ok(out)
}

fn cancels(a: &CliffordGate, b: &CliffordGate) -> bool {
    match (a, b) {
        (CliffordGate::P(x), CliffordGate::Pdg(y)) | (CliffordGate::Pdg(x), CliffordGate::P(y)) => x == y,
        (CliffordGate::P(_), CliffordGate::P(_)) | (CliffordGate::Pdg(_), CliffordGate::Pdg(_)) => false,
        (CliffordGate::Swap(a0, a1), CliffordGate::Swap(b0, b1)) => (a0, a1) == (b0, b1) || (a0, a1) == (b1, b0),
        // Remaining generators are involutions.
        _ => a == b,
    }
}

/// One peephole sweep with per-qubit stacks. Returns whether anything changed.
fn sweep(gates: &mut Vec<Gate>, n_qubits: usize) -> bool {
    let mut kept: Vec<Option<Gate>> = Vec::with_capacity(gates.len());
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); n_qubits];
    let mut changed = false;
    for g in gates.drain(..) {
        let qs: Vec<usize> = g.qubits().collect();
        let top = stacks[qs[0]].last().copied();
        let adjacent = top.filter(|&t| {
            let h = kept[t].as_ref().expect("stack entries are alive");
            let hq: Vec<usize> = h.qubits().collect();
            let same_set = hq.len() == qs.len() && qs.iter().all(|q| hq.contains(q));
            same_set && qs.iter().all(|&q| stacks[q].last() == Some(&t))
        });
        if let Some(t) = adjacent {
            let h = kept[t].unwrap();
            let merged = match (&h, &g) {
                (Gate::Clifford(a), Gate::Clifford(b)) if cancels(a, b) => Some(None),
                (Gate::Rotation(a), Gate::Rotation(b)) if a.axis == b.axis => {
                    let angle = wrap_angle(a.angle + b.angle);
                    if angle.abs() < 1e-12 {
                        Some(None)
                    } else {
                        Some(Some(Gate::Rotation(Rotation { angle, ..*a })))
                    }
                }
                _ => None,
            };
            if let Some(result) = merged {
                changed = true;
                match result {
                    Some(fused) => kept[t] = Some(fused),
                    None => {
                        kept[t] = None;
                        for &q in &qs {
                            stacks[q].pop();
                        }
                    }
                }
                continue;
            }
        }
        let idx = kept.len();
        kept.push(Some(g));
        for &q in &qs {
            stacks[q].push(idx);
        }
    }
    gates.extend(kept.into_iter().flatten());
    changed
}

/// Removes inverse pairs and fuses same-axis rotations that are adjacent in
/// the dependency graph, until a fixpoint, the pass limit, or the time limit.
pub fn cancel_adjacent(circuit: &Circuit, cfg: &CancelConfig) -> Circuit {
    let start = Instant::now();
    let mut gates = circuit.gates().to_vec();
    for _ in 0..cfg.passes {
        if !sweep(&mut gates, circuit.n_qubits()) || start.elapsed() >= cfg.time_limit {
            break;
        }
    }
    Circuit::from_gates(circuit.n_qubits(), gates).expect("cancellation keeps gates valid")
}

/// Groups, staircases in group order, then cancellation.
pub fn synth_baseline(h: &PauliSumHamiltonian, dt: f64, cfg: &CancelConfig) -> Result<SynthOutput> {
    if !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("dt must be finite, got {dt}")));
    }
    let n = h.n_qubits();
    let order: Vec<usize> = commuting_groups(h).into_iter().flatten().collect();
    let pieces: Vec<Vec<Gate>> = order
        .par_iter()
        .map(|&k| {
            let (c, p) = &h.terms()[k];
            staircase(p, 2.0 * c * dt, Some(k))
        })
        .collect::<Result<_>>()?;
    let raw = Circuit::from_gates(n, pieces.into_iter().flatten().collect())?;
    let records = order
        .iter()
        .map(|&k| {
            let (c, p) = &h.terms()[k];
            RotationRecord { term_id: k, pauli: p.clone(), angle: wrap_angle(2.0 * c * dt) }
        })
        .collect();
    let circuit = cancel_adjacent(&raw, cfg);
    let mut final_frame = SignedFrame::origin(n);
    final_frame.backward_apply_all(circuit.clifford_gates())?;
    let metrics = metrics(&circuit, h.n_terms().max(1))?;
    Ok(SynthOutput { circuit, final_frame, manifest: RotationManifest::new(n, records), metrics })
}
