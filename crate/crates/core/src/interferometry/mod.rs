//! Simulated interferometers: Ramsey with a classical or quantized field,
//! a Michelson interferometer, and GHZ dephasing.

use std::fmt;

use serde::{Deserialize, Serialize};

mod fringe;
mod ghz;
mod michelson;
mod phase_average;
mod ramsey;

pub use fringe::{harmonic_contrast, phase_scan, visibility, FringePoint, FringeResult};
pub use ghz::{ghz_decay_curve, ghz_state, run_ghz, run_ghz_full, GhzConfig, GhzResult, FULL_MAX_ATOMS};
pub use michelson::{
    arm_state, dephased_arm_state, michelson_input, run_michelson, BeamSplitter, MichelsonConfig,
    MichelsonResult, ARM_C, ARM_D,
};
pub use phase_average::{phase_average_check, phase_averaged_coherent, poisson_mixture};
pub use ramsey::{
    run_ramsey_quantized, run_ramsey_semiclassical, split_pulse_state, FieldState,
    QuantizedRamsey, RamseyConfig, ATOM, FIELD,
};

/// How the decoherence term is split over subsystems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Partition {
    /// One block with the total free Hamiltonian.
    Global,
    /// One block per subsystem.
    Local,
    /// A single block on the named subsystem.
    Only(String),
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Partition::Global => f.write_str("global"),
            Partition::Local => f.write_str("local"),
            Partition::Only(l) => write!(f, "only:{l}"),
        }
    }
}
