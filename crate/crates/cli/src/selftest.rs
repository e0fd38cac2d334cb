//! Deterministic acceptance checks 1–12. Each check reports what it
//! measured; none depends on timing or on the environment.

use edeco::constants::{angular_frequency, PLANCK_TIME, YEAR};
use edeco::engine::{evolve_analytic, evolve_stepped, DecoherenceBlock, DecoherenceSpec, EvolutionSpec};
use edeco::interferometry::{
    harmonic_contrast, phase_average_check, run_ghz, run_ghz_full, run_michelson, FieldState, GhzConfig,
    MichelsonConfig, Partition, QuantizedRamsey, RamseyConfig,
};
use edeco::quantum::{c, eig_h, frobenius, CMatrix, DensityMatrix, HilbertSpace, Operator, PureState};
use edeco::sensitivity::{
    cosmic_bound, ghz_design, ghz_design_grid, heuristic_center, log_grid, matterwave_bound,
    single_atom_reach, SpeciesParams, ATOMIC_MASS_UNIT,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::report::{Cell, Report, Table};
use crate::species;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> edeco::Result<(bool, String)>;

/// The checks in order, with their runtime budget in seconds.
pub const CHECKS: [(u32, &str, f64, Check); 12] = [
    (1, "stepped vs analytic solver", 10.0, solver_cross_check),
    (2, "single superposition decay law", 1.0, decay_law),
    (3, "global invariance, Ramsey", 30.0, ramsey_global_invariance),
    (4, "global invariance, Michelson", 30.0, michelson_invariance),
    (5, "phase diffusion identity", 5.0, phase_diffusion),
    (6, "GHZ N² law", 10.0, ghz_law),
    (7, "strontium design point", 5.0, design_point),
    (8, "closed form vs grid oracle", 60.0, grid_oracle),
    (9, "single-atom reach", 1.0, single_atom),
    (10, "matter-wave bound", 1.0, matterwave),
    (11, "cosmic bound", 1.0, cosmic),
    (12, "detuned global decay rate", 30.0, detuned_global),
];

pub fn run_check(id: u32) -> Option<Outcome> {
    CHECKS.iter().find(|c| c.0 == id).map(|&(id, name, _, check)| {
        let (passed, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        Outcome { id, name, passed, detail }
    })
}

/// Runs every check; independent checks run in parallel, results keep their order.
pub fn run_all() -> Vec<Outcome> {
    CHECKS.par_iter().filter_map(|c| run_check(c.0)).collect()
}

pub fn report(outcomes: &[Outcome]) -> Report {
    let mut table = Table::new(&["id", "name", "passed", "detail"]);
    for o in outcomes {
        table.push(vec![
            Cell::Int(o.id as u64),
            Cell::Text(o.name.into()),
            Cell::Bool(o.passed),
            Cell::Text(o.detail.clone()),
        ]);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let all = passed == outcomes.len();
    let mut r = Report::new(
        table,
        json!({ "passed": passed, "total": outcomes.len(), "all_passed": all, "criteria": outcomes }),
        vec![("passed", Cell::Int(passed as u64))],
    );
    r.success = all;
    r
}

fn state_ok(rho: &DensityMatrix) -> bool {
    (rho.trace().re - 1.0).abs() <= 1e-10 && rho.hermitian_deviation() <= 1e-10 && rho.is_positive(1e-9)
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let a = DMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * c(0.5, 0.0)
}

/// `U diag(v) U†`, Hermitized.
fn in_basis(u: &CMatrix, values: &[f64], space: &HilbertSpace) -> edeco::Result<Operator> {
    let d = DMatrix::from_diagonal(&DVector::from_iterator(values.len(), values.iter().map(|&v| c(v, 0.0))));
    let m = u * d * u.adjoint();
    Operator::new(space.clone(), (&m + m.adjoint()) * c(0.5, 0.0))
}

fn solver_cross_check() -> edeco::Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let mut states = true;
    for dims in [vec![2], vec![3, 2], vec![4, 4], vec![2, 2, 2, 2, 2, 2]] {
        let space = HilbertSpace::new(dims.iter().enumerate().map(|(i, &d)| (format!("q{i}"), d)))?;
        let n = space.dim();
        let u = eig_h(&Operator::new(space.clone(), random_hermitian(&mut rng, n))?)?.vectors.into_matrix();
        let mut spectrum = |levels: usize, scale: f64| -> Vec<f64> {
            let v: Vec<f64> = (0..levels).map(|_| scale * rng.gen_range(-1.0..1.0)).collect();
            (0..n).map(|i| v[i % levels]).collect()
        };
        let h = in_basis(&u, &spectrum(5, 0.5), &space)?;
        let block = in_basis(&u, &spectrum(3, 0.7), &space)?;
        let psi = DVector::from_fn(n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let rho = PureState::normalized(space.clone(), psi)?.to_density();
        let spec = EvolutionSpec::new(h, 1.0)
            .with_decoherence(DecoherenceSpec::new(0.5, vec![DecoherenceBlock::new(block)?])?);
        let exact = evolve_analytic(&rho, &spec)?;
        let stepped = evolve_stepped(&rho, &spec.clone().stepped(2e-2))?;
        worst = worst.max(frobenius(&(exact.matrix() - stepped.matrix())));
        states &= state_ok(&exact) && state_ok(&stepped);
    }
    Ok((worst <= 1e-8 && states, format!("max distance {worst:.3e} over dims 2..64; states valid: {states}")))
}

fn decay_law() -> edeco::Result<(bool, String)> {
    let q = HilbertSpace::single("atom", 2)?;
    let w0 = angular_frequency(1.0);
    let h = Operator::from_diagonal(&q, &[0.0, w0])?;
    let plus = PureState::normalized(q, DVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]))?.to_density();
    let sigma = 1e-33;
    let mut worst = 0.0f64;
    for k in 0..=40 {
        let x = 0.25 * k as f64;
        let spec = EvolutionSpec::new(h.clone(), x / (sigma * w0 * w0))
            .with_decoherence(DecoherenceSpec::global(sigma, h.clone())?);
        let out = evolve_analytic(&plus, &spec)?;
        worst = worst.max((out.matrix()[(0, 1)].norm() - 0.5 * (-x).exp()).abs());
    }
    Ok((worst <= 1e-9, format!("max deviation {worst:.3e} over σω₀²t in [0, 10]")))
}

fn fock12(sigma: f64) -> RamseyConfig {
    RamseyConfig::new(FieldState::Fock(12), angular_frequency(1.0), 1.0).with_decoherence(sigma, Partition::Global)
}

fn ramsey_global_invariance() -> edeco::Result<(bool, String)> {
    let mut vis = Vec::new();
    let mut states = true;
    for sigma in [0.0, 1e-40, 1e-30, 1e-20] {
        let run = QuantizedRamsey::new(&fock12(sigma))?;
        states &= state_ok(run.after_wait());
        vis.push(run.fringe()?.visibility);
    }
    let spread = vis.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - vis.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((spread <= 1e-9 && states, format!("visibility spread {spread:.3e}; states valid: {states}")))
}

fn michelson_invariance() -> edeco::Result<(bool, String)> {
    let w = angular_frequency(1.0);
    let t = 1e-9;
    let complete = 50.0 / (w * w * t);
    let global = run_michelson(&MichelsonConfig::new(c(2.0, 0.0), w, t).with_decoherence(complete, Partition::Global))?;
    let local = run_michelson(&MichelsonConfig::new(c(2.0, 0.0), w, t).with_decoherence(complete, Partition::Local))?;
    let states = state_ok(&global.state_out) && state_ok(&local.state_out);
    let ok = global.mean_photons_out_b <= 1e-8
        && (local.mean_photons_out_a - 2.0).abs() <= 1e-6
        && (local.mean_photons_out_b - 2.0).abs() <= 1e-6
        && states;
    Ok((
        ok,
        format!(
            "global b {:.3e}; local a {:.9} b {:.9}; states valid: {states}",
            global.mean_photons_out_b, local.mean_photons_out_a, local.mean_photons_out_b
        ),
    ))
}

fn phase_diffusion() -> edeco::Result<(bool, String)> {
    let d = phase_average_check(c(2.0, 0.0), 40, 160)?;
    Ok((d <= 1e-8, format!("distance {d:.3e}")))
}

fn ghz_law() -> edeco::Result<(bool, String)> {
    let w0 = angular_frequency(1.0);
    let sigma = 1e-4 / (w0 * w0);
    let one = run_ghz(&GhzConfig::new(1, w0, sigma, 1.0))?.effective_rate;
    let mut ratio_err = 0.0f64;
    for n in [2usize, 10, 1000, 100_000] {
        let r = run_ghz(&GhzConfig::new(n, w0, sigma, 1.0))?.effective_rate / one;
        ratio_err = ratio_err.max((r / (n * n) as f64 - 1.0).abs());
    }
    let mut brute = 0.0f64;
    for n in 1..=4 {
        let cfg = GhzConfig::new(n, 1.0, 0.05, 2.0);
        brute = brute.max((run_ghz_full(&cfg)?.0.coherence - run_ghz(&cfg)?.coherence).abs());
    }
    Ok((
        ratio_err <= 1e-12 && brute <= 1e-9,
        format!("N² ratio error {ratio_err:.3e}; brute-force deviation {brute:.3e}"),
    ))
}

fn strontium() -> SpeciesParams {
    species::lookup("Sr").expect("built-in species").params
}

fn grid_design(p: &SpeciesParams) -> edeco::Result<edeco::sensitivity::DesignResult> {
    let (nc, vc) = heuristic_center(p)?;
    ghz_design_grid(p, &log_grid(nc, 3.0, 100), &log_grid(vc, 3.0, 100))
}

fn design_point() -> edeco::Result<(bool, String)> {
    let p = strontium();
    let d = ghz_design(&p)?;
    let g = grid_design(&p)?;
    let n_ratio = (d.n_opt / g.n_opt).max(g.n_opt / d.n_opt);
    let ok = (d.n_opt / 1e5 - 1.0).abs() <= 1e-9
        && n_ratio <= 1.5
        && (d.v_opt / 1e-14 - 1.0).abs() <= 1e-9
        && (d.gamma_min / 1e-8 - 1.0).abs() <= 1e-12
        && (1e-39..=1e-38).contains(&d.sigma_min)
        && (d.l_max / 3e6 - 1.0).abs() <= 0.01;
    Ok((
        ok,
        format!(
            "n_opt {:.6e} (grid ratio {n_ratio:.4}), v_opt {:.6e}, gamma_min {:.6e}, sigma_min {:.4e}, l_decoherence {:.4e}",
            d.n_opt, d.v_opt, d.gamma_min, d.sigma_min, d.l_max
        ),
    ))
}

fn grid_oracle() -> edeco::Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let base = strontium();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mut scale = || 10f64.powf(rng.gen_range(-3.0..3.0));
        let p = SpeciesParams {
            gamma_sp: base.gamma_sp * scale(),
            kappa: base.kappa * scale(),
            k3: base.k3 * scale(),
            delta_e: base.delta_e * scale(),
            ..base.clone()
        };
        let d = ghz_design(&p)?;
        worst = worst.max((grid_design(&p)?.gamma_min / d.gamma_min - 1.0).abs());
    }
    Ok((worst <= 0.05, format!("max relative gamma_min difference {worst:.4e} over 100 species")))
}

fn single_atom() -> edeco::Result<(bool, String)> {
    let s = single_atom_reach(1e-3, 1.0)?;
    let ok = (s / 4.33e-34 - 1.0).abs() <= 1e-3 && (1e-34..=1e-32).contains(&s);
    Ok((ok, format!("sigma {s:.4e} s")))
}

fn matterwave() -> edeco::Result<(bool, String)> {
    let b = matterwave_bound(22.99 * ATOMIC_MASS_UNIT, 3000.0, 20e-6, 1.0, PLANCK_TIME)?;
    let l = b.decoherence_length.finite().unwrap_or(f64::INFINITY);
    let ok = (3e7..=1.5e8).contains(&b.rate) && (20e-6..=100e-6).contains(&l) && b.excluded;
    Ok((ok, format!("rate {:.4e} /s, length {:.4e} m, excluded {}", b.rate, l, b.excluded)))
}

fn cosmic() -> edeco::Result<(bool, String)> {
    let e = cosmic_bound(PLANCK_TIME, 1e10 * YEAR)?;
    Ok(((2e-3..=10e-3).contains(&e), format!("delta_e {e:.4e} eV")))
}

fn detuned_global() -> edeco::Result<(bool, String)> {
    let w0 = angular_frequency(1.0);
    let mut worst = 0.0f64;
    let mut states = true;
    for ratio in [1e-3, 1e-2] {
        let delta = ratio * w0;
        let sigma = 0.7 / (delta * delta);
        let cfg = RamseyConfig { detuning: delta, ..fock12(sigma) };
        let run = QuantizedRamsey::new(&cfg)?;
        states &= state_ok(run.after_wait());
        let ideal = QuantizedRamsey::new(&RamseyConfig { sigma: 0.0, ..cfg.clone() })?;
        let v = harmonic_contrast(&run.fringe()?.points)? / harmonic_contrast(&ideal.fringe()?.points)?;
        let rate = -v.ln() / cfg.wait;
        worst = worst.max((rate / (sigma * delta * delta) - 1.0).abs());
    }
    Ok((worst <= 1e-6 && states, format!("max relative rate error {worst:.3e}; states valid: {states}")))
}
