use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylqubit"))
        .args(args)
        .env_remove("WEYLQUBIT_L_MAX")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = cli(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn names(v: &Value) -> Vec<String> {
    v["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap().to_string()).collect()
}

#[test]
fn verify_pauli_passes_with_twelve_sorted_entries() {
    let (code, v) = json(&["verify-pauli"]);
    assert_eq!(code, 0);
    let n = names(&v);
    assert_eq!(n.len(), 12);
    let mut sorted = n.clone();
    sorted.sort();
    assert_eq!(n, sorted);
    for e in v["entries"].as_array().unwrap() {
        assert_eq!(e["status"], "pass");
        assert!(e["mode"].is_string() && e["residual"].is_number());
    }
}

#[test]
fn suites_exit_zero() {
    for args in [
        vec!["verify-commutant", "--l-max", "16"],
        vec!["verify-factor", "--l-max", "16"],
        vec!["verify-tensor", "--l-max", "16"],
        vec!["qudit", "--d", "3", "--l-max", "16"],
    ] {
        let out = cli(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn extract_emits_a_tree_that_recombines() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("v.json");
    fs::write(&path, r#"[{"theta": "0", "ell": 1, "coeff": {"mag": "1", "phase": "0"}}]"#).unwrap();
    let (code, v) = json(&["extract", "--n", "2", "--element", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["tree"]["depth"], 2);
    assert_eq!(v["tree"]["entries"].as_array().unwrap().len(), 4);
    assert_eq!(v["entries"][0]["name"], "recombination");
    assert_eq!(v["entries"][0]["status"], "pass");
}

#[test]
fn malformed_element_reports_location() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"[{"theta": "0", "ell": 1, "coeff": {"mag": "1", "phase": "0"}}, {"theta": "1/0", "ell": 0, "coeff": {"mag": "1", "phase": "0"}}]"#).unwrap();
    let out = cli(&["extract", "--n", "1", "--element", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json") && err.contains("term 1"), "{err}");
}

#[test]
fn gns_on_even_state() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("psi.json");
    fs::write(&path, r#"{"entries": [{"ell": 0, "re": 0.6}, {"ell": 2, "im": 0.8}]}"#).unwrap();
    let (code, v) = json(&["gns", "--state", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["representation"]["labels"].as_array().unwrap().len(), 2);
}

#[test]
fn optics_phase_gate() {
    let (code, v) = json(&["optics", "verify", "--gate", "phase", "--phi", "1.5707963"]);
    assert_eq!(code, 0);
    assert!((v["gate"]["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(v["gate"]["alternative"].is_object());
}

#[test]
fn optics_unknown_gate_is_an_error() {
    let out = cli(&["optics", "verify", "--gate", "toffoli"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn optics_simulate_sorter() {
    let dir = TempDir::new().unwrap();
    let circuit = dir.path().join("c.json");
    let input = dir.path().join("in.json");
    fs::write(
        &circuit,
        r#"{"space": {"paths": 2, "polarization": false, "l_max": 8},
            "stages": [{"kind": "beam_splitter", "i": 0, "j": 1},
                       {"kind": "dove_prism", "path": 1, "alpha": 3.141592653589793},
                       {"kind": "beam_splitter", "i": 0, "j": 1}]}"#,
    )
    .unwrap();
    fs::write(&input, r#"{"entries": [{"path": 0, "ell": 2, "re": 1.0}]}"#).unwrap();
    let (code, v) = json(&["optics", "simulate", "--circuit", circuit.to_str().unwrap(), "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    let out = v["output"]["entries"].as_array().unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0]["path"], 1);
    assert!((out[0]["im"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn env_sets_default_window_and_flag_wins() {
    let out = Command::new(env!("CARGO_BIN_EXE_weylqubit"))
        .args(["verify-pauli", "--l-max", "4"])
        .env("WEYLQUBIT_L_MAX", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_weylqubit")).arg("verify-pauli").env("WEYLQUBIT_L_MAX", "16").output().unwrap();
    assert!(out.status.success());
}
