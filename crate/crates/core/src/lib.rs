//! Pauli frame graph synthesis of Trotterized Hamiltonian simulation circuits.

pub mod bench;
pub mod bits;
pub mod circuit;
pub mod error;
pub mod frame;
pub mod ham;
pub mod manifest;
pub mod pauli;
pub mod synth;
pub mod verify;

pub use error::{Error, Result};
