//! Dephasing of `(|g…g⟩ + |e…e⟩)/√2`.
//!
//! Only the two macroscopic branches matter, so the main path is a
//! two-level model with scalar loss rates attached; losing any atom
//! removes the state from the span. A full `2^N` simulation is kept for
//! small `N` as a cross-check.

use serde::Serialize;

use crate::engine::{evolve, DecoherenceSpec, EvolutionSpec};
use crate::error::{invalid, Result};
use crate::quantum::{CVector, DensityMatrix, HilbertSpace, Operator, PureState};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GhzConfig {
    pub n_atoms: usize,
    /// Single-atom gap ω₀, rad/s.
    pub omega0: f64,
    pub sigma: f64,
    /// Spontaneous decay rate Γ per atom, 1/s.
    pub gamma_sp: f64,
    /// Total three-body loss rate `k₃N³/V²`, 1/s.
    pub three_body_rate: f64,
    pub wait: f64,
}

impl GhzConfig {
    pub fn new(n_atoms: usize, omega0: f64, sigma: f64, wait: f64) -> Self {
        Self {
            n_atoms,
            omega0,
            sigma,
            gamma_sp: 0.0,
            three_body_rate: 0.0,
            wait,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_atoms == 0 {
            return Err(invalid("n_atoms", "must be at least 1"));
        }
        for (name, v) in [
            ("omega0", self.omega0),
            ("sigma", self.sigma),
            ("gamma_sp", self.gamma_sp),
            ("three_body_rate", self.three_body_rate),
            ("wait", self.wait),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }

    /// `σ(Nω₀)²`, 1/s.
    pub fn dephasing_rate(&self) -> f64 {
        let w = self.n_atoms as f64 * self.omega0;
        self.sigma * w * w
    }

    /// `NΓ + k₃N³/V²`, 1/s.
    pub fn loss_rate(&self) -> f64 {
        self.n_atoms as f64 * self.gamma_sp + self.three_body_rate
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GhzResult {
    /// `|⟨g…g|ρ|e…e⟩|`, at most ½.
    pub coherence: f64,
    /// Probability that no atom has been lost.
    pub survival: f64,
    pub effective_rate: f64,
}

pub fn run_ghz(cfg: &GhzConfig) -> Result<GhzResult> {
    cfg.validate()?;
    Ok(ghz_at(cfg, cfg.wait))
}

fn ghz_at(cfg: &GhzConfig, t: f64) -> GhzResult {
    let effective_rate = cfg.dephasing_rate() + cfg.loss_rate();
    GhzResult {
        coherence: 0.5 * (-effective_rate * t).exp(),
        survival: (-cfg.loss_rate() * t).exp(),
        effective_rate,
    }
}

/// Coherence and survival at each of `times`.
pub fn ghz_decay_curve(cfg: &GhzConfig, times: &[f64]) -> Result<Vec<(f64, GhzResult)>> {
    cfg.validate()?;
    times
        .iter()
        .map(|&t| {
            if !(t >= 0.0) {
                return Err(invalid("times", format!("must be >= 0, got {t}")));
            }
            Ok((t, ghz_at(cfg, t)))
        })
        .collect()
}

/// Largest atom number for the explicit `2^N` simulation.
pub const FULL_MAX_ATOMS: usize = 8;

fn atom_labels(n: usize) -> Vec<(String, usize)> {
    (0..n).map(|i| (format!("atom{i}"), 2)).collect()
}

/// `(|g…g⟩ + |e…e⟩)/√2` on `N` qubits labelled `atom0…`.
pub fn ghz_state(n_atoms: usize) -> Result<PureState> {
    if n_atoms == 0 || n_atoms > FULL_MAX_ATOMS {
        return Err(invalid("n_atoms", format!("explicit states need 1 ≤ N ≤ {FULL_MAX_ATOMS}")));
    }
    let space = HilbertSpace::new(atom_labels(n_atoms))?;
    let mut amps = CVector::zeros(space.dim());
    amps[0] = crate::quantum::c(1.0, 0.0);
    amps[space.dim() - 1] = crate::quantum::c(1.0, 0.0);
    PureState::normalized(space, amps)
}

/// Explicit evolution of the GHZ state under one decoherence block
/// `Σᵢ ω₀|e⟩⟨e|ᵢ` covering all atoms. Loss rates are not modelled here.
pub fn run_ghz_full(cfg: &GhzConfig) -> Result<(GhzResult, DensityMatrix)> {
    cfg.validate()?;
    if cfg.gamma_sp != 0.0 || cfg.three_body_rate != 0.0 {
        return Err(invalid("gamma_sp", "the explicit model carries no loss channels"));
    }
    let rho0 = ghz_state(cfg.n_atoms)?.to_density();
    let space = rho0.space().clone();
    let excitations: Vec<f64> = (0..space.dim())
        .map(|i| space.digits(i).iter().sum::<usize>() as f64)
        .collect();
    let total = Operator::from_diagonal(&space, &excitations)?.scaled(cfg.omega0);
    let spec = EvolutionSpec::new(Operator::zeros(&space), cfg.wait)
        .with_decoherence(DecoherenceSpec::global(cfg.sigma, total)?);
    let rho = evolve(&rho0, &spec)?;
    let last = space.dim() - 1;
    let m = rho.matrix();
    let result = GhzResult {
        coherence: m[(0, last)].norm(),
        survival: m[(0, 0)].re + m[(last, last)].re,
        effective_rate: cfg.dephasing_rate(),
    };
    Ok((result, rho))
}
