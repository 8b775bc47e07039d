//! Circuit synthesis: the Pauli-frame-graph walk and the staircase baseline.

mod baseline;
mod pfg;

pub use baseline::{cancel_adjacent, commuting_groups, staircase, synth_baseline, CancelConfig};
pub use pfg::{retrace, synth, SchedulerState, SynthConfig, TermState, TieBreak, Walk};

use crate::circuit::{Circuit, Metrics};
use crate::frame::SignedFrame;
use crate::manifest::RotationManifest;

/// A synthesized step together with what is needed to verify it.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthOutput {
    pub circuit: Circuit,
    /// Frame reached after the circuit's Clifford gates.
    pub final_frame: SignedFrame,
    pub manifest: RotationManifest,
    pub metrics: Metrics,
}
