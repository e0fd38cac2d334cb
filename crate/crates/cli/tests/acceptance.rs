//! One line per acceptance criterion, with measured values and runtime
//! against the budget. Exits nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use edeco_cli::selftest::{run_check, CHECKS};
use serde_json::Value;

struct Line {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: f64,
}

fn edeco(args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_edeco"))
        .args(args)
        .output()
        .map_err(|e| format!("spawn failed: {e}"))?
        .status;
    if !status.success() {
        return Err(format!("`{}` exited with {status}", args.join(" ")));
    }
    Ok(())
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Two runs of each command write byte-identical CSV and JSON, and the
/// JSON survives a parse/serialize/parse round trip unchanged.
fn determinism() -> Result<String, String> {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let runs: [&[&str]; 2] = [&["selftest"], &["design", "--species", "Sr"]];
    let mut notes = Vec::new();
    for args in runs {
        let mut files = Vec::new();
        for attempt in 0..2 {
            let stem = dir.join(format!("{}-{attempt}", args[0]));
            let mut full = args.to_vec();
            full.extend(["--out", stem.to_str().unwrap()]);
            edeco(&full)?;
            let csv = read(&stem.with_extension("csv"))?;
            let json = read(&stem.with_extension("json"))?;
            files.push((csv, json));
        }
        if files[0] != files[1] {
            return Err(format!("`{}` output differs between runs", args.join(" ")));
        }
        let parsed: Value = serde_json::from_slice(&files[0].1).map_err(|e| e.to_string())?;
        let again: Value = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
        if parsed != again {
            return Err(format!("`{}` JSON does not round-trip", args.join(" ")));
        }
        notes.push(format!("{} ({} + {} bytes)", args[0], files[0].0.len(), files[0].1.len()));
    }
    Ok(format!("byte-identical CSV and JSON: {}", notes.join(", ")))
}

fn main() {
    let mut lines = Vec::new();
    for &(id, name, budget, _) in CHECKS.iter() {
        let start = Instant::now();
        let o = run_check(id).expect("listed check");
        lines.push(Line { id, name, passed: o.passed, detail: o.detail, elapsed: start.elapsed(), budget });
    }
    let start = Instant::now();
    let (passed, detail) = match determinism() {
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    lines.push(Line {
        id: 13,
        name: "CLI determinism and round-trip",
        passed,
        detail,
        elapsed: start.elapsed(),
        budget: 10.0,
    });

    let mut failures = 0;
    for l in &lines {
        let secs = l.elapsed.as_secs_f64();
        let ok = l.passed && secs < l.budget;
        failures += usize::from(!ok);
        println!(
            "criterion {:>2}: {} {}: {} [{:.2} s, budget {} s]",
            l.id,
            if ok { "PASS" } else { "FAIL" },
            l.name,
            l.detail,
            secs,
            l.budget
        );
    }
    println!("{} of {} criteria passed", lines.len() - failures, lines.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
