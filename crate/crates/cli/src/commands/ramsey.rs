use std::f64::consts::FRAC_PI_2;

use edeco::interferometry::{
    phase_scan, run_ramsey_quantized, run_ramsey_semiclassical, FieldState, Partition, RamseyConfig,
    ATOM, FIELD,
};
use edeco::quantum::c;
use serde_json::json;

use super::gap;
use crate::config::Params;
use crate::error::{CliError, Result};
use crate::report::{to_value, Cell, Report, Table};

pub(crate) fn config(params: &Params) -> Result<RamseyConfig> {
    let semiclassical = params.choice("mode", "quantized") == "semiclassical";
    if semiclassical && (params.contains("n") || params.contains("alpha") || params.contains("field")) {
        return Err(CliError::Usage("the semiclassical mode takes no field keys".into()));
    }
    let field = match params.choice("field", "fock") {
        // The classical drive ignores the field; any state satisfies the config.
        _ if semiclassical => FieldState::Fock(1),
        "fock" => FieldState::Fock(params.require_count("n")?),
        _ => FieldState::Coherent(c(params.require_f64("alpha")?, 0.0)),
    };
    let partition = match params.choice("partition", "global") {
        "global" => Partition::Global,
        "local" => Partition::Local,
        "atom" => Partition::Only(ATOM.into()),
        _ => Partition::Only(FIELD.into()),
    };
    let count = params.count("phases")?.unwrap_or(32);
    if count < 3 {
        return Err(CliError::Usage("`phases` must be at least 3".into()));
    }
    let mut cfg = RamseyConfig::new(field, gap(params)?, params.require_f64("wait")?)
        .with_decoherence(params.f64_or("sigma", 0.0)?, partition);
    cfg.n_max = params.count("n_max")?;
    cfg.coupling = params.f64_or("coupling", 1.0)?;
    cfg.pulse_area = params.f64_or("pulse_area", FRAC_PI_2)?;
    cfg.detuning = params.f64_or("detuning", 0.0)?;
    cfg.spontaneous_rate = params.f64_or("gamma_sp", 0.0)?;
    cfg.phases = phase_scan(count);
    if cfg.sigma < 0.0 {
        return Err(edeco::Error::InvalidParameter { name: "sigma", reason: "must be >= 0".into() }.into());
    }
    Ok(cfg)
}

pub(crate) fn run(params: &Params) -> Result<Report> {
    let cfg = config(params)?;
    let mode = params.choice("mode", "quantized");
    let fringe = if mode == "semiclassical" {
        run_ramsey_semiclassical(&cfg)?
    } else {
        run_ramsey_quantized(&cfg)?
    };
    let mut table = Table::new(&["phi", "p_g"]);
    for p in &fringe.points {
        table.push(vec![Cell::Num(p.phi), Cell::Num(p.p_g)]);
    }
    let result = json!({
        "mode": mode,
        "visibility": fringe.visibility,
        "points": to_value(&fringe.points)?,
    });
    Ok(Report::new(table, result, vec![("visibility", Cell::Num(fringe.visibility))]))
}
