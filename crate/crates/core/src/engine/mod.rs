//! Time evolution under unitary drive, energy decoherence and losses.
//!
//! Two propagators are provided. [`evolve_analytic`] works in the joint
//! eigenbasis of commuting drive and block Hamiltonians and is exact;
//! [`evolve_stepped`] integrates the generator with fixed-step RK4 and also
//! handles loss channels. When both apply they agree to ~1e-8.

mod generator;
mod propagate;
mod spec;

pub use generator::generator;
pub use propagate::{evolve, evolve_analytic, evolve_stepped, COMMUTE_TOL, MAX_STEP_NORM};
pub use spec::{DecoherenceBlock, DecoherenceSpec, EvolutionSpec, LossChannel, LossKind, Method};

use crate::constants::angular_frequency;

/// Off-diagonal decay rate `σ (ΔE/ħ)²` in 1/s for a gap `delta_e` in eV.
pub fn decoherence_rate(delta_e: f64, sigma: f64) -> f64 {
    let omega = angular_frequency(delta_e);
    sigma * omega * omega
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PLANCK_TIME;

    #[test]
    fn zero_gap_has_zero_rate() {
        assert_eq!(decoherence_rate(0.0, 1e-30), 0.0);
    }

    #[test]
    fn one_ev_at_millihertz() {
        let r = decoherence_rate(1.0, 4.33e-34);
        assert!((r - 9.9944e-4).abs() < 1e-7, "{r}");
    }

    #[test]
    fn sodium_rest_energy_at_planck_time() {
        let r = decoherence_rate(20e9, 5.39e-44);
        assert!((r / 4.9764e7 - 1.0).abs() < 1e-3, "{r}");
        let r_p = decoherence_rate(20e9, PLANCK_TIME);
        assert!(r_p > 4e7 && r_p < 6e7);
    }
}
