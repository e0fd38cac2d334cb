use serde::Serialize;

use super::species::SpeciesParams;
use crate::constants::{angular_frequency, C};
use crate::error::{invalid, Error, Result};

/// Absolute decoherence and loss rates (1/s) of an `N`-atom GHZ state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DesignRates {
    /// `γ N²`
    pub gravitational: f64,
    /// `N Γ`
    pub spontaneous: f64,
    /// `k₃ N³ / V²`
    pub three_body: f64,
}

/// Operating point of the GHZ experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DesignResult {
    pub n_opt: f64,
    /// m³
    pub v_opt: f64,
    /// Smallest detectable single-atom decoherence rate γ, 1/s.
    pub gamma_min: f64,
    /// Matching discretization timescale σ, s.
    pub sigma_min: f64,
    /// System–reference distance reachable at `gamma_min`, m.
    pub l_max: f64,
    /// GHZ creation time `1/(Nχ) = V/(Nκ)`, s.
    pub creation_time: f64,
    /// `κ/(N V γ)`; the creation-time constraint holds when this is ≥ 1.
    pub creation_margin: f64,
    pub rates: DesignRates,
}

impl DesignResult {
    /// True when GHZ creation is no faster than the decoherence it must beat.
    pub fn creation_constraint_binding(&self) -> bool {
        self.creation_margin <= 1.0 + 1e-9
    }
}

fn check_positive(p: &SpeciesParams) -> Result<()> {
    p.validate()?;
    for (name, v) in [
        ("gamma_sp", p.gamma_sp),
        ("kappa", p.kappa),
        ("k3", p.k3),
        ("delta_e", p.delta_e),
    ] {
        if !(v > 0.0) {
            return Err(invalid(name, format!("must be > 0, got {v}")));
        }
    }
    Ok(())
}

fn assemble(p: &SpeciesParams, n: f64, v: f64, gamma: f64) -> DesignResult {
    let omega = angular_frequency(p.delta_e);
    DesignResult {
        n_opt: n,
        v_opt: v,
        gamma_min: gamma,
        sigma_min: gamma / (omega * omega),
        l_max: C * gamma / (p.gamma_sp * p.gamma_sp),
        creation_time: v / (n * p.kappa),
        creation_margin: p.kappa / (n * v * gamma),
        rates: DesignRates {
            gravitational: gamma * n * n,
            spontaneous: n * p.gamma_sp,
            three_body: p.k3 * n * n * n / (v * v),
        },
    }
}

/// Closed-form optimum: `V = κ/Γ`, `N = κ/√(k₃Γ)`, `γ_min = √(Γ³k₃)/κ`.
///
/// At this point the spontaneous (`Γ/N`) and three-body (`k₃N/V²`) bounds
/// are equal to `γ_min`.
pub fn ghz_design(p: &SpeciesParams) -> Result<DesignResult> {
    check_positive(p)?;
    let v = p.kappa / p.gamma_sp;
    let n = p.kappa / (p.k3 * p.gamma_sp).sqrt();
    let gamma = (p.gamma_sp.powi(3) * p.k3).sqrt() / p.kappa;
    Ok(assemble(p, n, v, gamma))
}

/// Smallest detectable γ at atom number `n` and volume `v`, or `None` when
/// the GHZ state cannot be created faster than that rate.
pub fn detectable_gamma(p: &SpeciesParams, n: f64, v: f64) -> Option<f64> {
    let gamma = (p.gamma_sp / n).max(p.k3 * n / (v * v));
    let creation = p.kappa / (n * v);
    // boundary points count as feasible up to rounding
    (creation >= gamma * (1.0 - 1e-12)).then_some(gamma)
}

/// Brute-force search over `n_grid × v_grid` minimizing
/// `max(Γ/N, k₃N/V²)` subject to `κ/(NV) ≥` that value.
pub fn ghz_design_grid(p: &SpeciesParams, n_grid: &[f64], v_grid: &[f64]) -> Result<DesignResult> {
    check_positive(p)?;
    if n_grid.is_empty() {
        return Err(Error::Empty("atom-number grid"));
    }
    if v_grid.is_empty() {
        return Err(Error::Empty("volume grid"));
    }
    let mut best: Option<(f64, f64, f64)> = None;
    for &v in v_grid {
        for &n in n_grid {
            if let Some(g) = detectable_gamma(p, n, v) {
                if best.is_none_or(|(bg, _, _)| g < bg) {
                    best = Some((g, n, v));
                }
            }
        }
    }
    let (gamma, n, v) = best.ok_or(Error::InfeasibleGrid)?;
    Ok(assemble(p, n, v, gamma))
}

/// `2·decades·per_decade + 1` log-spaced points centred on `center`.
pub fn log_grid(center: f64, decades: f64, per_decade: usize) -> Vec<f64> {
    let half = (decades * per_decade as f64).round() as i64;
    let lc = center.log10();
    (-half..=half)
        .map(|k| 10f64.powf(lc + k as f64 / per_decade as f64))
        .collect()
}

/// Grid centre for the brute-force search: the closed-form optimum rounded
/// to the nearest power of ten.
pub fn heuristic_center(p: &SpeciesParams) -> Result<(f64, f64)> {
    let d = ghz_design(p)?;
    Ok((
        10f64.powf(d.n_opt.log10().round()),
        10f64.powf(d.v_opt.log10().round()),
    ))
}
