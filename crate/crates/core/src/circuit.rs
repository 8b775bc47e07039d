//! Circuit representation, ASAP scheduling, TQE expansion and a line-oriented
//! text format.
//!
//! Text format: a `qubits N` header, then one gate per line as
//! `NAME q[,q][ angle][ @term]`. `#` starts a comment.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::frame::{return_gates, CliffordGate, SignedFrame, TqeGate, TQE_NAMES};
use crate::pauli::PauliKind;

/// Single-qubit Pauli rotation `exp(-i angle/2 · axis)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    pub axis: PauliKind,
    pub qubit: usize,
    pub angle: f64,
    pub term_id: Option<usize>,
}

/// Maps an angle into `(-π, π]`.
pub fn wrap_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

impl Rotation {
    pub fn new(axis: PauliKind, qubit: usize, angle: f64, term_id: Option<usize>) -> Result<Self> {
        if axis == PauliKind::I {
            return Err(Error::InvalidParameter("rotation axis must be X, Y or Z".into()));
        }
        if !angle.is_finite() {
            return Err(Error::InvalidParameter(format!("rotation angle {angle} is not finite")));
        }
        Ok(Self { axis, qubit, angle: wrap_angle(angle), term_id })
    }

    pub fn name(&self) -> &'static str {
        match self.axis {
            PauliKind::X => "RX",
            PauliKind::Y => "RY",
            _ => "RZ",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Clifford(CliffordGate),
    Rotation(Rotation),
}

impl Gate {
    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            Gate::Clifford(g) => {
                let mut it = g.qubits().iter();
                (it.next().unwrap(), it.next())
            }
            Gate::Rotation(r) => (r.qubit, None),
        };
        std::iter::once(a).chain(b)
    }

    pub fn is_tqe(&self) -> bool {
        matches!(self, Gate::Clifford(CliffordGate::Tqe(_)))
    }

    /// TQE-equivalent count: one per TQE, three per SWAP.
    pub fn tqe_weight(&self) -> usize {
        match self {
            Gate::Clifford(CliffordGate::Tqe(_)) => 1,
            Gate::Clifford(CliffordGate::Swap(..)) => 3,
            _ => 0,
        }
    }

    pub fn as_clifford(&self) -> Option<&CliffordGate> {
        match self {
            Gate::Clifford(g) => Some(g),
            Gate::Rotation(_) => None,
        }
    }

    fn check(&self, n_qubits: usize) -> Result<()> {
        match self {
            Gate::Clifford(g) => g.check(n_qubits),
            Gate::Rotation(r) if r.qubit >= n_qubits => Err(Error::QubitIndex { index: r.qubit, n_qubits }),
            Gate::Rotation(r) if !r.angle.is_finite() || r.angle <= -PI || r.angle > PI => {
                Err(Error::InvalidParameter(format!("rotation angle {} outside (-pi, pi]", r.angle)))
            }
            Gate::Rotation(_) => Ok(()),
        }
    }
}

impl From<CliffordGate> for Gate {
    fn from(g: CliffordGate) -> Self {
        Gate::Clifford(g)
    }
}

impl From<Rotation> for Gate {
    fn from(r: Rotation) -> Self {
        Gate::Rotation(r)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Clifford(g) => write!(f, "{g}"),
            Gate::Rotation(r) => {
                write!(f, "{} {} {}", r.name(), r.qubit, r.angle)?;
                if let Some(t) = r.term_id {
                    write!(f, " @{t}")?;
                }
                Ok(())
            }
        }
    }
}

/// Ordered gate list on a fixed register, in application order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.check(n_qubits)?;
        }
        Ok(Self { n_qubits, gates })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: impl Into<Gate>) -> Result<()> {
        let gate = gate.into();
        gate.check(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, gate: impl Into<Gate>) {
        self.gates.push(gate.into());
    }

    pub fn extend_from(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch(other.n_qubits, self.n_qubits));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn clifford_gates(&self) -> impl Iterator<Item = &CliffordGate> {
        self.gates.iter().filter_map(Gate::as_clifford)
    }

    pub fn rotations(&self) -> impl Iterator<Item = &Rotation> {
        self.gates.iter().filter_map(|g| match g {
            Gate::Rotation(r) => Some(r),
            Gate::Clifford(_) => None,
        })
    }

    pub fn tqe_count(&self) -> usize {
        self.gates.iter().map(Gate::tqe_weight).sum()
    }

    pub fn rotation_count(&self) -> usize {
        self.rotations().count()
    }

    /// Exact inverse: reversed order, `P ↔ P†`, negated angles.
    pub fn inverse(&self) -> Circuit {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| match g {
                Gate::Clifford(c) => Gate::Clifford(c.inverse()),
                Gate::Rotation(r) => Gate::Rotation(Rotation { angle: wrap_angle(-r.angle), ..*r }),
            })
            .collect();
        Circuit { n_qubits: self.n_qubits, gates }
    }

    /// Replaces every non-CX TQE and every SWAP by standard gates.
    pub fn expanded(&self) -> Circuit {
        let mut out = Circuit::new(self.n_qubits);
        for g in &self.gates {
            match g {
                Gate::Clifford(CliffordGate::Tqe(t)) => {
                    out.gates.extend(expand_tqe(t).into_iter().map(Gate::Clifford));
                }
                Gate::Clifford(CliffordGate::Swap(a, b)) => {
                    let (a, b) = (*a, *b);
                    for (c, t) in [(a, b), (b, a), (a, b)] {
                        out.gates.push(Gate::Clifford(CliffordGate::cx(c, t).expect("distinct qubits")));
                    }
                }
                g => out.gates.push(*g),
            }
        }
        out
    }
}

/// Clifford circuit whose backward action takes `frame` to the origin.
pub fn clifford_circuit_of_frame(frame: &SignedFrame) -> Result<Circuit> {
    let gates = return_gates(frame)?;
    Ok(Circuit { n_qubits: frame.n_qubits(), gates: gates.into_iter().map(Gate::Clifford).collect() })
}

/// Gates `B` (application order) with `B u B† = +Z`.
fn to_z(u: PauliKind, q: usize) -> Vec<CliffordGate> {
    match u {
        PauliKind::X => vec![CliffordGate::H(q)],
        PauliKind::Y => vec![CliffordGate::Pdg(q), CliffordGate::H(q)],
        _ => vec![],
    }
}

/// Gates `B` (application order) with `B v B† = +X`.
fn to_x(v: PauliKind, q: usize) -> Vec<CliffordGate> {
    match v {
        PauliKind::Z => vec![CliffordGate::H(q)],
        PauliKind::Y => vec![CliffordGate::Pdg(q)],
        _ => vec![],
    }
}

/// Standard-gate form of a TQE gate: basis changes, one CX (either
/// orientation), inverse basis changes. CX-type gates expand to themselves.
pub fn expand_tqe(gate: &TqeGate) -> Vec<CliffordGate> {
    let (i, j, u, v) = (gate.qubit_i, gate.qubit_j, gate.type_i, gate.type_j);
    let forward = [to_z(u, i), to_x(v, j)].concat();
    let reverse = [to_z(v, j), to_x(u, i)].concat();
    let (pre, control, target) = if reverse.len() < forward.len() { (reverse, j, i) } else { (forward, i, j) };
    let mut out = pre.clone();
    out.push(CliffordGate::cx(control, target).expect("distinct qubits"));
    out.extend(pre.iter().rev().map(CliffordGate::inverse));
    out
}

/// Per-gate durations for scheduling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostModel {
    pub tqe: u64,
    pub swap: u64,
    pub single_clifford: u64,
    pub rotation: u64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self { tqe: 1, swap: 1, single_clifford: 1, rotation: 1 }
    }
}

impl CostModel {
    /// Counts only entangling gates; single-qubit gates are free.
    pub fn tqe_only() -> Self {
        Self { tqe: 1, swap: 3, single_clifford: 0, rotation: 0 }
    }

    pub fn duration(&self, gate: &Gate) -> u64 {
        match gate {
            Gate::Clifford(CliffordGate::Tqe(_)) => self.tqe,
            Gate::Clifford(CliffordGate::Swap(..)) => self.swap,
            Gate::Clifford(_) => self.single_clifford,
            Gate::Rotation(_) => self.rotation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub start: Vec<u64>,
    pub depth: u64,
}

/// Each gate starts once all its qubits are free.
pub fn asap_schedule(circuit: &Circuit, cost: &CostModel) -> Schedule {
    let mut free = vec![0u64; circuit.n_qubits];
    let mut start = Vec::with_capacity(circuit.len());
    let mut depth = 0;
    for g in &circuit.gates {
        let t0 = g.qubits().map(|q| free[q]).max().unwrap_or(0);
        let t1 = t0 + cost.duration(g);
        for q in g.qubits() {
            free[q] = t1;
        }
        depth = depth.max(t1);
        start.push(t0);
    }
    Schedule { start, depth }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Metrics {
    pub tqe_count: usize,
    pub tqe_per_term: f64,
    pub depth_all_gates: u64,
    pub depth_tqe_only: u64,
    pub rotation_count: usize,
}

impl Metrics {
    pub const CSV_HEADER: &'static str = "tqe_count,tqe_per_term,depth_all_gates,depth_tqe_only,rotation_count";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.tqe_count, self.tqe_per_term, self.depth_all_gates, self.depth_tqe_only, self.rotation_count
        )
    }
}

pub fn metrics(circuit: &Circuit, n_terms: usize) -> Result<Metrics> {
    if n_terms == 0 {
        return Err(Error::InvalidParameter("metrics need at least one term".into()));
    }
    let tqe_count = circuit.tqe_count();
    Ok(Metrics {
        tqe_count,
        tqe_per_term: tqe_count as f64 / n_terms as f64,
        depth_all_gates: asap_schedule(circuit, &CostModel::default()).depth,
        depth_tqe_only: asap_schedule(circuit, &CostModel::tqe_only()).depth,
        rotation_count: circuit.rotation_count(),
    })
}

/// Serializes a circuit. With `expand`, TQE gates become CX plus
/// single-qubit Cliffords and CX-type gates print as `CX control,target`.
pub fn export_text(circuit: &Circuit, expand: bool) -> String {
    let c = if expand { circuit.expanded() } else { circuit.clone() };
    let mut out = format!("qubits {}\n", c.n_qubits);
    for g in &c.gates {
        match g {
            Gate::Clifford(CliffordGate::Tqe(t)) if expand && t.type_i == PauliKind::X => {
                // Only CX-type gates survive expansion; AZ is CX with the upper control.
                let _ = writeln!(out, "CX {},{}", t.qubit_j, t.qubit_i);
            }
            g => {
                let _ = writeln!(out, "{g}");
            }
        }
    }
    out
}

fn parse_qubits(text: &str, line: usize) -> Result<Vec<usize>> {
    text.split(',')
        .map(|q| q.trim().parse::<usize>().map_err(|_| Error::parse(line, format!("bad qubit index {q:?}"))))
        .collect()
}

pub fn import_text(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some(c) = circuit.as_mut() else {
            if tokens.len() == 2 && tokens[0] == "qubits" {
                let n = tokens[1].parse().map_err(|_| Error::parse(line, "bad qubit count"))?;
                circuit = Some(Circuit::new(n));
                continue;
            }
            return Err(Error::parse(line, "expected `qubits N` header"));
        };
        let name = tokens[0].to_ascii_uppercase();
        let qs = parse_qubits(tokens.get(1).ok_or_else(|| Error::parse(line, "missing qubits"))?, line)?;
        let mut rest = &tokens[2..];
        let mut term_id = None;
        if let Some(last) = rest.last() {
            if let Some(t) = last.strip_prefix('@') {
                term_id = Some(t.parse().map_err(|_| Error::parse(line, format!("bad term id {t:?}")))?);
                rest = &rest[..rest.len() - 1];
            }
        }
        let arity = |k: usize| -> Result<()> {
            if qs.len() != k {
                return Err(Error::parse(line, format!("{name} takes {k} qubit(s)")));
            }
            Ok(())
        };
        let gate: Gate = match name.as_str() {
            "RX" | "RY" | "RZ" => {
                arity(1)?;
                let [angle] = rest else {
                    return Err(Error::parse(line, "rotation needs exactly one angle"));
                };
                let angle: f64 = angle.parse().map_err(|_| Error::parse(line, format!("bad angle {angle:?}")))?;
                let axis = PauliKind::from_char(name.chars().nth(1).unwrap()).unwrap();
                Rotation::new(axis, qs[0], angle, term_id).map_err(|e| Error::parse(line, e.to_string()))?.into()
            }
            _ if !rest.is_empty() || term_id.is_some() => {
                return Err(Error::parse(line, format!("unexpected arguments for {name}")));
            }
            "H" | "P" | "PDG" | "X" | "Y" | "Z" => {
                arity(1)?;
                let q = qs[0];
                match name.as_str() {
                    "H" => CliffordGate::H(q),
                    "P" => CliffordGate::P(q),
                    "PDG" => CliffordGate::Pdg(q),
                    other => CliffordGate::Pauli(PauliKind::from_char(other.chars().next().unwrap()).unwrap(), q),
                }
                .into()
            }
            "SWAP" => {
                arity(2)?;
                CliffordGate::swap(qs[0], qs[1]).map_err(|e| Error::parse(line, e.to_string()))?.into()
            }
            n if TQE_NAMES.contains(&n) => {
                arity(2)?;
                CliffordGate::Tqe(TqeGate::from_name(n, qs[0], qs[1]).map_err(|e| Error::parse(line, e.to_string()))?)
                    .into()
            }
            _ => return Err(Error::parse(line, format!("unknown gate {name:?}"))),
        };
        gate.check(c.n_qubits).map_err(|e| Error::parse(line, e.to_string()))?;
        c.gates.push(gate);
    }
    circuit.ok_or_else(|| Error::parse(0, "missing `qubits N` header"))
}
