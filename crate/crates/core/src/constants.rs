//! Physical constants and fixed numerical tolerances.
//!
//! Every unit conversion in the crate goes through the values below.

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// One electronvolt in joules.
pub const EV: f64 = 1.602_176_634e-19;

/// Speed of light, m/s.
pub const C: f64 = 299_792_458.0;

/// Planck time, s.
pub const PLANCK_TIME: f64 = 5.391_247e-44;

/// Julian year, s.
pub const YEAR: f64 = 365.25 * 86_400.0;

/// Hermiticity tolerance for density matrices (relative Frobenius).
pub const HERM_TOL: f64 = 1e-12;

/// Allowed deviation of a density matrix trace from one.
pub const TRACE_TOL: f64 = 1e-10;

/// Most negative eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = 1e-9;

/// Reconstruction tolerance of the Hermitian eigendecomposition.
pub const EIG_TOL: f64 = 1e-9;

/// Norm tolerance for pure states.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance of the `is_hermitian` / `is_unitary` operator predicates.
pub const OPERATOR_TOL: f64 = 1e-10;

/// Angular frequency (rad/s) of an energy gap given in eV.
pub fn angular_frequency(delta_e_ev: f64) -> f64 {
    delta_e_ev * EV / HBAR
}

/// Energy in eV of an angular frequency in rad/s.
pub fn energy_ev(omega: f64) -> f64 {
    omega * HBAR / EV
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_ev_frequency() {
        let w = angular_frequency(1.0);
        assert!((w / 1.519_267e15 - 1.0).abs() < 1e-6);
        assert!((energy_ev(w) - 1.0).abs() < 1e-15);
    }
}
