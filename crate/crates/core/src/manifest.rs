//! Rotation manifest: the original Pauli and signed angle of every emitted
//! rotation, in emission order.
//!
//! Text form: `qubits N` header, then `<term_id> <angle> <dense pauli>` per
//! line. A record `(p, θ)` stands for `exp(-i θ/2 p)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pauli::{parse_pauli, PauliString};

#[derive(Clone, Debug, PartialEq)]
pub struct RotationRecord {
    pub term_id: usize,
    pub pauli: PauliString,
    pub angle: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RotationManifest {
    pub n_qubits: usize,
    pub records: Vec<RotationRecord>,
}

impl RotationManifest {
    pub fn new(n_qubits: usize, records: Vec<RotationRecord>) -> Self {
        Self { n_qubits, records }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for r in &self.records {
            let _ = writeln!(out, "{} {} {}", r.term_id, r.angle, r.pauli.to_dense_string());
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n_qubits = None;
        let mut records = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            let Some(n) = n_qubits else {
                match tokens.as_slice() {
                    ["qubits", n] => {
                        n_qubits = Some(n.parse().map_err(|_| Error::parse(line, "bad qubit count"))?);
                        continue;
                    }
                    _ => return Err(Error::parse(line, "expected `qubits N` header")),
                }
            };
            let [id, angle, pauli] = tokens.as_slice() else {
                return Err(Error::parse(line, "expected `<term_id> <angle> <pauli>`"));
            };
            let term_id = id.parse().map_err(|_| Error::parse(line, format!("bad term id {id:?}")))?;
            let angle: f64 = angle.parse().map_err(|_| Error::parse(line, format!("bad angle {angle:?}")))?;
            if !angle.is_finite() {
                return Err(Error::parse(line, "angle is not finite"));
            }
            let p = parse_pauli(pauli, Some(n)).map_err(|e| Error::parse(line, e.to_string()))?;
            records.push(RotationRecord { term_id, pauli: p.into_pauli(), angle });
        }
        let n_qubits = n_qubits.ok_or_else(|| Error::parse(0, "missing `qubits N` header"))?;
        Ok(Self { n_qubits, records })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "qubits 3\n0 0.25 ZZI\n4 -1.5 XIY\n";
        let m = RotationManifest::parse(text).unwrap();
        assert_eq!(m.records.len(), 2);
        assert_eq!(m.to_text(), text);
        assert!(matches!(RotationManifest::parse("qubits 2\n0 x ZZ\n"), Err(Error::Parse { line: 2, .. })));
    }
}
