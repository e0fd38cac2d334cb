use serde::{Serialize, Serializer};

use crate::constants::{angular_frequency, C, EV, HBAR};
use crate::error::{invalid, Result};

/// A length that may be unbounded. Serializes as a number or the string
/// `"unbounded"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Length {
    Finite(f64),
    Unbounded,
}

impl Length {
    pub fn finite(self) -> Option<f64> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Unbounded => None,
        }
    }

    fn min(self, other: Length) -> Length {
        match (self, other) {
            (Length::Finite(a), Length::Finite(b)) => Length::Finite(a.min(b)),
            (Length::Finite(a), Length::Unbounded) | (Length::Unbounded, Length::Finite(a)) => {
                Length::Finite(a)
            }
            _ => Length::Unbounded,
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(v) => s.serialize_f64(*v),
            Length::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(invalid(name, format!("must be finite and > 0, got {v}")));
    }
    Ok(())
}

fn non_negative(name: &'static str, v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
    }
    Ok(())
}

/// Discretization timescale σ (s) resolvable by a single two-level atom
/// with gap `delta_e` (eV) when rates down to `gamma_detectable` (1/s) are
/// measurable: `σ = γ / (ΔE/ħ)²`.
pub fn single_atom_reach(gamma_detectable: f64, delta_e: f64) -> Result<f64> {
    positive("gamma", gamma_detectable)?;
    positive("delta_e", delta_e)?;
    let omega = angular_frequency(delta_e);
    Ok(gamma_detectable / (omega * omega))
}

/// Decoherence of a massive particle's path superposition when energy
/// decoherence acts separately on each path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MatterwaveBound {
    /// `σ (mc²/ħ)²`, 1/s.
    pub rate: f64,
    /// Distance travelled during one decoherence time, m.
    pub decoherence_length: Length,
    /// Path separation, i.e. the locality scale the experiment tests, m.
    pub locality_scale: f64,
    /// True when the particles should have decohered before the end of the
    /// interferometer, so observed fringes rule out decoherence acting
    /// locally on scales below `locality_scale`.
    pub excluded: bool,
}

/// Matter-wave interferometry bound for particles of `mass` (kg) moving at
/// `velocity` (m/s) through an interferometer of length `flight_length`
/// (m) with arms `path_separation` (m) apart.
pub fn matterwave_bound(
    mass: f64,
    velocity: f64,
    path_separation: f64,
    flight_length: f64,
    sigma: f64,
) -> Result<MatterwaveBound> {
    positive("mass", mass)?;
    positive("velocity", velocity)?;
    positive("path_separation", path_separation)?;
    positive("flight_length", flight_length)?;
    non_negative("sigma", sigma)?;
    let omega = mass * C * C / HBAR;
    let rate = sigma * omega * omega;
    let decoherence_length = if rate > 0.0 {
        Length::Finite(velocity / rate)
    } else {
        Length::Unbounded
    };
    let excluded = matches!(decoherence_length, Length::Finite(l) if l < flight_length);
    Ok(MatterwaveBound {
        rate,
        decoherence_length,
        locality_scale: path_separation,
        excluded,
    })
}

/// System–reference separation limits for long-distance Ramsey experiments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceReach {
    /// `c γ / Γ²`, m; unbounded when γ or Γ vanish.
    pub l_decoherence: Length,
    /// `c × coherence time`, m.
    pub l_laser: f64,
    /// Smallest applicable limit, m.
    pub l_max: f64,
}

pub fn distance_reach(gamma: f64, gamma_sp: f64, coherence_time: f64) -> Result<DistanceReach> {
    non_negative("gamma", gamma)?;
    non_negative("gamma_sp", gamma_sp)?;
    non_negative("coherence_time", coherence_time)?;
    let l_decoherence = if gamma > 0.0 && gamma_sp > 0.0 {
        Length::Finite(C * gamma / (gamma_sp * gamma_sp))
    } else {
        Length::Unbounded
    };
    let l_laser = C * coherence_time;
    let l_max = Length::Finite(l_laser)
        .min(l_decoherence)
        .finite()
        .unwrap_or(l_laser);
    Ok(DistanceReach {
        l_decoherence,
        l_laser,
        l_max,
    })
}

/// Energy gap (eV) whose coherence decays by one e-fold over `age` seconds:
/// `ΔE = ħ / √(σ · age)`.
pub fn cosmic_bound(sigma: f64, age: f64) -> Result<f64> {
    positive("sigma", sigma)?;
    positive("age", age)?;
    Ok(HBAR / (sigma * age).sqrt() / EV)
}
