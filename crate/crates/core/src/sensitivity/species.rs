use serde::Serialize;

use crate::constants::HBAR;
use crate::error::{invalid, Result};

/// Unified atomic mass unit, kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

/// Elastic s-wave scattering lengths (m) between two ground-state atoms,
/// two excited atoms, and one of each.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScatteringLengths {
    pub a_gg: f64,
    pub a_ee: f64,
    pub a_eg: f64,
}

/// Atomic-physics inputs of the GHZ experiment design.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpeciesParams {
    /// Spontaneous decay rate of the excited state, 1/s.
    pub gamma_sp: f64,
    /// Energy gap between the two clock states, eV.
    pub delta_e: f64,
    /// Atomic mass, kg.
    pub mass: f64,
    /// Collisional phase coefficient κ, m³/s.
    pub kappa: f64,
    /// Three-body loss coefficient, m⁶/s.
    pub k3: f64,
    pub scattering: Option<ScatteringLengths>,
}

impl SpeciesParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("gamma_sp", self.gamma_sp),
            ("delta_e", self.delta_e),
            ("mass", self.mass),
            ("kappa", self.kappa),
            ("k3", self.k3),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        if let Some(s) = self.scattering {
            for (name, v) in [("a_gg", s.a_gg), ("a_ee", s.a_ee), ("a_eg", s.a_eg)] {
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
                }
            }
            let derived = kappa_from_scattering(self.mass, s.a_gg, s.a_ee, s.a_eg)?;
            let scale = derived.abs().max(self.kappa.abs()).max(f64::MIN_POSITIVE);
            if (derived - self.kappa).abs() / scale > 1e-9 {
                return Err(invalid(
                    "kappa",
                    format!("{} disagrees with scattering lengths ({derived})", self.kappa),
                ));
            }
        }
        Ok(())
    }
}

/// `κ = (2πħ/m)(a_gg + a_ee − 2a_eg)` in m³/s.
pub fn kappa_from_scattering(mass: f64, a_gg: f64, a_ee: f64, a_eg: f64) -> Result<f64> {
    if !(mass > 0.0) {
        return Err(invalid("mass", format!("must be > 0, got {mass}")));
    }
    Ok(2.0 * std::f64::consts::PI * HBAR / mass * (a_gg + a_ee - 2.0 * a_eg))
}

/// Collisional phase rate `χ = κ/V` (1/s) for a condensate of volume `V` (m³).
pub fn chi(kappa: f64, volume: f64) -> f64 {
    kappa / volume
}
