//! Tabular (CSV) and summary (JSON) output of a command.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{Command, Params};
use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Cell {
    /// CSV text; floats carry 17 significant digits.
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<edeco::sensitivity::Length> for Cell {
    fn from(l: edeco::sensitivity::Length) -> Self {
        match l.finite() {
            Some(v) => Cell::Num(v),
            None => Cell::Text("unbounded".into()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).map_err(|e| CliError::Output(e.to_string()))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))
                .map_err(|e| CliError::Output(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }
}

/// Everything a command produces.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    /// Per-point data for the CSV file.
    pub table: Table,
    /// Full result for the JSON file.
    pub result: Value,
    /// Headline scalars, one sweep row per run.
    pub scalars: Vec<(String, Cell)>,
    /// Selftest reports a failure through the exit status.
    pub success: bool,
}

impl Report {
    pub fn new(table: Table, result: Value, scalars: Vec<(&str, Cell)>) -> Self {
        Self {
            table,
            result,
            scalars: scalars.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            success: true,
        }
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Output(e.to_string()))
}

pub fn parameters_json(params: &Params) -> Value {
    Value::Object(
        params
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
            .collect::<Map<_, _>>(),
    )
}

/// The JSON document written for a single run.
pub fn document(command: Command, params: &Params, report: &Report) -> Value {
    json!({
        "command": command.name(),
        "parameters": parameters_json(params),
        "result": report.result,
    })
}

pub fn to_json_string(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `<stem>.csv`, `<stem>.json` and the `<stem>.meta.json` sidecar.
/// Returns the written paths.
pub fn write_outputs(stem: &Path, csv: &str, json: &str, meta: &Value) -> Result<Vec<PathBuf>> {
    let base = match stem.extension().and_then(|e| e.to_str()) {
        Some("csv") | Some("json") => stem.with_extension(""),
        _ => stem.to_path_buf(),
    };
    let with = |suffix: &str| {
        let mut s = base.as_os_str().to_owned();
        s.push(suffix);
        PathBuf::from(s)
    };
    let paths = vec![with(".csv"), with(".json"), with(".meta.json")];
    write(&paths[0], csv)?;
    write(&paths[1], json)?;
    write(&paths[2], &to_json_string(meta)?)?;
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_and_full_precision() {
        let mut t = Table::new(&["phi", "p_g", "note"]);
        t.push(vec![Cell::Num(0.1), Cell::Num(1.0 / 3.0), Cell::Text("a,b".into())]);
        let s = t.to_csv().unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("phi,p_g,note"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("1.0000000000000001e-1,3.3333333333333331e-1,"));
        assert!(row.ends_with("\"a,b\""));
        let back: f64 = "3.3333333333333331e-1".parse().unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn header_only_when_empty() {
        assert_eq!(Table::new(&["a"]).to_csv().unwrap(), "a\n");
    }
}
