use edeco_cli::run_args;
use serde_json::Value;

fn run(args: &[&str]) -> edeco_cli::app::Outcome {
    run_args(args.iter().map(|s| s.to_string()).collect())
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error_kind(out: &edeco_cli::app::Outcome) -> String {
    let v: Value = serde_json::from_str(&out.stderr).expect("error object on stderr");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn design_for_strontium_reports_the_working_point() {
    let v = json_ok(&["design", "--species", "Sr"]);
    let cf = &v["result"]["closed_form"];
    assert!((cf["n_opt"].as_f64().unwrap() / 1e5 - 1.0).abs() < 1e-9);
    assert!((cf["gamma_min"].as_f64().unwrap() / 1e-8 - 1.0).abs() < 1e-9);
    assert!(v["result"]["grid"]["n_opt"].is_number());
    assert!(v["result"]["relative_difference"]["gamma_min"].as_f64().unwrap() <= 0.05);
}

#[test]
fn global_sigma_leaves_ramsey_visibility_unchanged() {
    let base = ["ramsey", "--mode", "quantized", "--field", "fock", "--n", "12", "--partition", "global", "--wait", "1"];
    let vis = |sigma: &str| {
        let mut args = base.to_vec();
        args.extend(["--sigma", sigma]);
        json_ok(&args)["result"]["visibility"].as_f64().unwrap()
    };
    assert!((vis("1e-30") - vis("0")).abs() <= 1e-9);
}

#[test]
fn local_sigma_reduces_ramsey_visibility() {
    let v = json_ok(&[
        "ramsey", "--n", "4", "--partition", "local", "--wait", "1", "--omega0", "1", "--sigma", "0.5",
    ]);
    assert!(v["result"]["visibility"].as_f64().unwrap() < 0.9);
}

#[test]
fn cosmic_bound_is_a_few_mev() {
    let v = json_ok(&["bounds", "--cosmic", "--sigma", "5.391e-44", "--age-years", "1e10"]);
    let e = v["result"]["cosmic"]["delta_e_ev"].as_f64().unwrap();
    assert!((e / 5e-3 - 1.0).abs() < 0.05, "{e}");
}

#[test]
fn bounds_without_section_flags_reports_every_section() {
    let v = json_ok(&[
        "bounds", "--sigma", "5.391e-44", "--gamma", "1e-8", "--delta-e", "1", "--mass", "3.8e-26",
        "--velocity", "1000", "--path-separation", "2e-5", "--gamma-sp", "1e-3", "--coherence-time", "1",
        "--age-years", "1e10",
    ]);
    for key in ["single_atom", "matterwave", "distance", "cosmic"] {
        assert!(v["result"].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn sigma_sweep_keeps_order_and_visibility_is_non_increasing() {
    let out = run(&[
        "ramsey", "--mode", "semiclassical", "--wait", "1", "--sweep", "sigma", "--values", "0,1e-36,1e-34",
        "--format", "csv",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut rows = out.stdout.lines();
    assert_eq!(rows.next(), Some("sigma,visibility"));
    let parsed: Vec<(f64, f64)> = rows
        .map(|r| {
            let mut it = r.split(',').map(|x| x.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(parsed.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0.0, 1e-36, 1e-34]);
    assert!(parsed.windows(2).all(|w| w[1].1 <= w[0].1));
    assert!(parsed[2].1 < parsed[0].1);
}

#[test]
fn single_value_sweep_matches_a_plain_run() {
    let plain = json_ok(&["ghz", "--n-atoms", "3", "--omega0", "1", "--sigma", "0.01", "--wait", "2"]);
    let swept = json_ok(&[
        "ghz", "--n-atoms", "3", "--omega0", "1", "--wait", "2", "--sweep", "sigma", "--values", "0.01",
    ]);
    let rows = swept["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["result"], plain["result"]);
}

#[test]
fn empty_sweep_is_an_error() {
    let out = run(&["ghz", "--n-atoms", "3", "--omega0", "1", "--wait", "2", "--sweep", "sigma", "--values", ""]);
    assert_ne!(out.code, 0);
    assert!(out.stdout.is_empty());
    error_kind(&out);
}

#[test]
fn sweeping_a_choice_key_is_rejected() {
    let out = run(&["ramsey", "--n", "2", "--wait", "1", "--sweep", "partition", "--values", "1,2"]);
    assert_eq!(out.code, 2);
    assert_eq!(error_kind(&out), "not_sweepable");
}

#[test]
fn unknown_flag_and_unit_suffix_are_input_errors() {
    let out = run(&["ramsey", "--n", "2", "--wait", "1", "--bogus", "3"]);
    assert_eq!(out.code, 2);
    assert!(!out.stderr.contains("found: unexpected"));
    let out = run(&["ramsey", "--n", "2", "--wait", "1s"]);
    assert_eq!(out.code, 2);
    assert_eq!(error_kind(&out), "malformed_number");
}

#[test]
fn config_file_entries_yield_to_flags() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let file = dir.join("run.cfg");
    std::fs::write(&file, "# ghz run\nn_atoms = 2\nomega0 = 1\nwait = 1\nsigma = 1e-38\n").unwrap();
    let v = json_ok(&["ghz", "--config", file.to_str().unwrap(), "--sigma", "0.25"]);
    assert_eq!(v["parameters"]["sigma"], "0.25");
    assert_eq!(v["parameters"]["n_atoms"], "2");
}

#[test]
fn out_writes_csv_json_and_sidecar() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let stem = dir.join("fringe");
    let out = run(&["ramsey", "--n", "3", "--wait", "1", "--out", stem.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let csv = std::fs::read_to_string(dir.join("fringe.csv")).unwrap();
    assert!(csv.starts_with("phi,p_g\n"));
    assert_eq!(csv.lines().count(), 33);
    let json: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("fringe.json")).unwrap()).unwrap();
    assert_eq!(json["command"], "ramsey");
    let meta: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("fringe.meta.json")).unwrap()).unwrap();
    assert!(meta["created_unix"].is_u64());
    assert!(json.get("created_unix").is_none());
}

#[test]
fn unwritable_output_path_fails_cleanly() {
    let out = run(&["ghz", "--n-atoms", "2", "--omega0", "1", "--wait", "1", "--out", "/nonexistent/dir/result"]);
    assert_eq!(out.code, 1);
    assert_eq!(error_kind(&out), "io");
}

#[test]
fn missing_required_key_is_reported() {
    let out = run(&["ghz", "--n-atoms", "2", "--omega0", "1"]);
    assert_eq!(out.code, 2);
    assert_eq!(error_kind(&out), "missing_key");
}
