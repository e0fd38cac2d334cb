//! Runs one command per value of a numeric key, in parallel, keeping the
//! rows in the order the values were given.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::execute;
use crate::config::{Command, Params, Sweep};
use crate::error::{CliError, Result};
use crate::report::{parameters_json, Cell, Report, Table};

pub fn sweep(command: Command, params: &Params, sweep: &Sweep) -> Result<Report> {
    if sweep.values.is_empty() {
        return Err(CliError::Usage("sweep over an empty list of values".into()));
    }
    let runs: Vec<Report> = sweep
        .values
        .par_iter()
        .map(|v| execute(command, &params.with(&sweep.key, v)))
        .collect::<Result<_>>()?;

    let names: Vec<&str> = runs[0].scalars.iter().map(|(k, _)| k.as_str()).collect();
    let mut header = vec![sweep.key.as_str()];
    header.extend(&names);
    let mut table = Table::new(&header);
    let mut rows = Vec::with_capacity(runs.len());
    for (value, run) in sweep.values.iter().zip(&runs) {
        let x = crate::config::parse_number(&sweep.key, value)?;
        let mut row = vec![Cell::Num(x)];
        row.extend(run.scalars.iter().map(|(_, c)| c.clone()));
        table.push(row);
        rows.push(json!({ "value": x, "result": run.result }));
    }
    let result = json!({ "sweep": sweep.key, "rows": Value::Array(rows) });
    let mut report = Report::new(table, result, vec![]);
    report.success = runs.iter().all(|r| r.success);
    Ok(report)
}

/// JSON document for a sweep, with the swept key removed from the
/// parameter echo.
pub fn document(command: Command, params: &Params, report: &Report) -> Value {
    json!({
        "command": command.name(),
        "parameters": parameters_json(params),
        "result": report.result,
    })
}
