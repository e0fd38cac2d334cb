use edeco::interferometry::{ghz_decay_curve, run_ghz, GhzConfig};
use serde_json::json;

use super::gap;
use crate::config::Params;
use crate::error::{CliError, Result};
use crate::report::{to_value, Cell, Report, Table};

pub(crate) fn run(params: &Params) -> Result<Report> {
    let cfg = GhzConfig {
        gamma_sp: params.f64_or("gamma_sp", 0.0)?,
        three_body_rate: params.f64_or("three_body_rate", 0.0)?,
        ..GhzConfig::new(
            params.require_count("n_atoms")?,
            gap(params)?,
            params.f64_or("sigma", 0.0)?,
            params.require_f64("wait")?,
        )
    };
    let points = params.count("points")?.unwrap_or(11);
    if points < 2 {
        return Err(CliError::Usage("`points` must be at least 2".into()));
    }
    let times: Vec<f64> = (0..points)
        .map(|k| cfg.wait * k as f64 / (points - 1) as f64)
        .collect();
    let curve = ghz_decay_curve(&cfg, &times)?;
    let end = run_ghz(&cfg)?;

    let mut table = Table::new(&["t", "coherence", "survival"]);
    for (t, r) in &curve {
        table.push(vec![Cell::Num(*t), Cell::Num(r.coherence), Cell::Num(r.survival)]);
    }
    let curve_json: Vec<_> = curve
        .iter()
        .map(|(t, r)| json!({ "t": t, "coherence": r.coherence, "survival": r.survival }))
        .collect();
    let result = json!({
        "final": to_value(&end)?,
        "dephasing_rate": cfg.dephasing_rate(),
        "loss_rate": cfg.loss_rate(),
        "curve": curve_json,
    });
    Ok(Report::new(
        table,
        result,
        vec![
            ("coherence", Cell::Num(end.coherence)),
            ("survival", Cell::Num(end.survival)),
            ("effective_rate", Cell::Num(end.effective_rate)),
        ],
    ))
}
