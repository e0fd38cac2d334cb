use edeco::constants::angular_frequency;
use edeco::interferometry::{run_michelson, MichelsonConfig, Partition, ARM_C, ARM_D};
use edeco::quantum::c;
use serde_json::json;

use crate::config::Params;
use crate::error::Result;
use crate::report::{Cell, Report, Table};

pub(crate) fn run(params: &Params) -> Result<Report> {
    let partition = match params.choice("partition", "global") {
        "global" => Partition::Global,
        "local" => Partition::Local,
        "arm_c" => Partition::Only(ARM_C.into()),
        _ => Partition::Only(ARM_D.into()),
    };
    let mut cfg = MichelsonConfig::new(
        c(params.require_f64("alpha")?, 0.0),
        params.f64_or("omega", angular_frequency(1.0))?,
        params.require_f64("arm_time")?,
    )
    .with_decoherence(params.f64_or("sigma", 0.0)?, partition);
    cfg.n_max = params.count("n_max")?;
    let r = run_michelson(&cfg)?;
    let mut table = Table::new(&["mean_photons_out_a", "mean_photons_out_b"]);
    table.push(vec![Cell::Num(r.mean_photons_out_a), Cell::Num(r.mean_photons_out_b)]);
    let result = json!({
        "n_max": cfg.cutoff(),
        "mean_photons_out_a": r.mean_photons_out_a,
        "mean_photons_out_b": r.mean_photons_out_b,
    });
    Ok(Report::new(
        table,
        result,
        vec![
            ("mean_photons_out_a", Cell::Num(r.mean_photons_out_a)),
            ("mean_photons_out_b", Cell::Num(r.mean_photons_out_b)),
        ],
    ))
}
