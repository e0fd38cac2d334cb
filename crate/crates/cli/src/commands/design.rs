use edeco::sensitivity::{
    ghz_design, ghz_design_grid, heuristic_center, kappa_from_scattering, log_grid, DesignResult,
    ScatteringLengths, SpeciesParams,
};
use serde_json::json;

use crate::config::Params;
use crate::error::{CliError, Result};
use crate::report::{to_value, Cell, Report, Table};
use crate::species;

pub(crate) fn species_params(params: &Params) -> Result<(Option<&'static str>, SpeciesParams)> {
    let base = params
        .get("species")
        .map(|name| species::lookup(name).ok_or_else(|| CliError::Usage(format!("unknown species `{name}`"))))
        .transpose()?;
    let pick = |key: &str, fallback: Option<f64>| -> Result<f64> {
        match params.f64(key)? {
            Some(v) => Ok(v),
            None => fallback.ok_or_else(|| CliError::MissingKey { key: key.into(), command: "design".into() }),
        }
    };
    let b = base.as_ref().map(|s| &s.params);
    let mass = pick("mass", b.map(|p| p.mass))?;
    let scattering = match (params.f64("a_gg")?, params.f64("a_ee")?, params.f64("a_eg")?) {
        (Some(a_gg), Some(a_ee), Some(a_eg)) => Some(ScatteringLengths { a_gg, a_ee, a_eg }),
        (None, None, None) => None,
        _ => return Err(CliError::Usage("give all three scattering lengths or none".into())),
    };
    let kappa = match (params.f64("kappa")?, &scattering) {
        (Some(k), _) => k,
        (None, Some(s)) => kappa_from_scattering(mass, s.a_gg, s.a_ee, s.a_eg)?,
        (None, None) => pick("kappa", b.map(|p| p.kappa))?,
    };
    let p = SpeciesParams {
        gamma_sp: pick("gamma_sp", b.map(|p| p.gamma_sp))?,
        delta_e: pick("delta_e", b.map(|p| p.delta_e))?,
        mass,
        kappa,
        k3: pick("k3", b.map(|p| p.k3))?,
        scattering,
    };
    p.validate()?;
    Ok((base.map(|s| s.name), p))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

type Field = fn(&DesignResult) -> f64;

pub(crate) fn run(params: &Params) -> Result<Report> {
    let (name, p) = species_params(params)?;
    let per_decade = params.count("grid_per_decade")?.unwrap_or(100);
    let decades = params.f64_or("grid_decades", 3.0)?;
    if per_decade == 0 || !(decades > 0.0) {
        return Err(CliError::Usage("grid needs per_decade ≥ 1 and decades > 0".into()));
    }
    let closed = ghz_design(&p)?;
    let (nc, vc) = heuristic_center(&p)?;
    let grid = ghz_design_grid(&p, &log_grid(nc, decades, per_decade), &log_grid(vc, decades, per_decade))?;

    let fields: [(&str, Field); 8] = [
        ("n_opt", |d| d.n_opt),
        ("v_opt", |d| d.v_opt),
        ("gamma_min", |d| d.gamma_min),
        ("sigma_min", |d| d.sigma_min),
        ("l_max", |d| d.l_max),
        ("creation_time", |d| d.creation_time),
        ("creation_margin", |d| d.creation_margin),
        ("gravitational_rate", |d| d.rates.gravitational),
    ];
    let mut table = Table::new(&["quantity", "closed_form", "grid", "relative_difference"]);
    let mut diff = serde_json::Map::new();
    for (label, get) in fields {
        let (a, b) = (get(&closed), get(&grid));
        table.push(vec![Cell::Text(label.into()), Cell::Num(a), Cell::Num(b), Cell::Num(rel(b, a))]);
        diff.insert(label.into(), json!(rel(b, a)));
    }
    let result = json!({
        "species": name,
        "inputs": to_value(&p)?,
        "closed_form": to_value(&closed)?,
        "grid": to_value(&grid)?,
        "grid_points_per_axis": log_grid(nc, decades, per_decade).len(),
        "relative_difference": diff,
    });
    Ok(Report::new(
        table,
        result,
        vec![
            ("n_opt", Cell::Num(closed.n_opt)),
            ("v_opt", Cell::Num(closed.v_opt)),
            ("gamma_min", Cell::Num(closed.gamma_min)),
            ("gamma_min_grid", Cell::Num(grid.gamma_min)),
            ("sigma_min", Cell::Num(closed.sigma_min)),
        ],
    ))
}
