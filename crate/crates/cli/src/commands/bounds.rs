use edeco::constants::YEAR;
use edeco::sensitivity::{cosmic_bound, distance_reach, matterwave_bound, single_atom_reach};
use serde_json::{json, Map, Value};

use crate::config::Params;
use crate::error::Result;
use crate::report::{to_value, Cell, Report, Table};

const SECTIONS: [&str; 4] = ["single_atom", "matterwave", "distance", "cosmic"];

pub(crate) fn run(params: &Params) -> Result<Report> {
    let selected: Vec<&str> = SECTIONS.into_iter().filter(|s| params.flag(s)).collect();
    let selected = if selected.is_empty() { SECTIONS.to_vec() } else { selected };

    let mut table = Table::new(&["section", "quantity", "value"]);
    let mut result = Map::new();
    let mut scalars = Vec::new();
    let mut push = |section: &str, quantity: &'static str, cell: Cell, scalars: &mut Vec<(&'static str, Cell)>| {
        table.push(vec![Cell::Text(section.into()), Cell::Text(quantity.into()), cell.clone()]);
        scalars.push((quantity, cell));
    };
    for section in selected {
        let value: Value = match section {
            "single_atom" => {
                let sigma = single_atom_reach(params.require_f64("gamma")?, params.require_f64("delta_e")?)?;
                push(section, "sigma", Cell::Num(sigma), &mut scalars);
                json!({ "sigma": sigma })
            }
            "matterwave" => {
                let b = matterwave_bound(
                    params.require_f64("mass")?,
                    params.require_f64("velocity")?,
                    params.require_f64("path_separation")?,
                    params.f64_or("flight_length", 1.0)?,
                    params.require_f64("sigma")?,
                )?;
                push(section, "rate", Cell::Num(b.rate), &mut scalars);
                push(section, "decoherence_length", b.decoherence_length.into(), &mut scalars);
                push(section, "excluded", Cell::Bool(b.excluded), &mut scalars);
                to_value(&b)?
            }
            "distance" => {
                let r = distance_reach(
                    params.require_f64("gamma")?,
                    params.require_f64("gamma_sp")?,
                    params.require_f64("coherence_time")?,
                )?;
                push(section, "l_decoherence", r.l_decoherence.into(), &mut scalars);
                push(section, "l_laser", Cell::Num(r.l_laser), &mut scalars);
                push(section, "l_max", Cell::Num(r.l_max), &mut scalars);
                to_value(&r)?
            }
            _ => {
                let e = cosmic_bound(params.require_f64("sigma")?, params.require_f64("age_years")? * YEAR)?;
                push(section, "delta_e_ev", Cell::Num(e), &mut scalars);
                json!({ "delta_e_ev": e })
            }
        };
        result.insert(section.to_string(), value);
    }
    Ok(Report::new(table, Value::Object(result), scalars))
}
