use std::f64::consts::PI;
use std::process::Command;

use dwconst::{build_norm, objective_value, EngineConfig, Formulation, Witness};
use dwconst_cli::{run_args, EXIT_INTERNAL, EXIT_OK, EXIT_SPEC};
use serde_json::Value;

fn run_json(args: &[&str]) -> Value {
    let mut full = vec!["dwconst"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "json"]);
    let out = run_args(full);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn json_witness_reproduces_the_value() {
    for (cmd, norm, extra) in [
        ("dw", "mixed:inf,1", vec![]),
        ("dw", "regular:12", vec!["--formulation", "3"]),
        ("dw", "lp:inf", vec!["--formulation", "1"]),
        ("dwb", "mixed:2,1", vec![]),
        ("ib", "mixed:inf,1", vec![]),
    ] {
        let mut args = vec![cmd, "--norm", norm, "--grid", "180", "--t-grid", "64"];
        args.extend(extra);
        let j = run_json(&args);
        let witness: Witness = serde_json::from_value(j["witness"].clone()).unwrap();
        let f: Formulation = serde_json::from_value(j["formulation"].clone()).unwrap();
        let cfg: EngineConfig = serde_json::from_value(j["config"].clone()).unwrap();
        assert_eq!(cfg.angle_grid_n, 180);
        let n = build_norm(&norm.parse().unwrap()).unwrap();
        let again = objective_value(&n, f, &witness, &cfg).unwrap();
        let value = j["value"].as_f64().unwrap();
        assert!((again - value).abs() <= 1e-9, "{cmd} {norm}: {again} vs {value}");
        assert_eq!(j["command"], cmd);
        assert!(j["boundaryFlag"].is_boolean());
        assert!(j["elapsedMs"].is_u64());
    }
}

#[test]
fn identical_requests_give_identical_json() {
    let args = ["dw", "--norm", "regular:12", "--grid", "120", "--t-grid", "32"];
    let mut a = run_json(&args);
    let mut b = run_json(&args);
    a.as_object_mut().unwrap().remove("elapsedMs");
    b.as_object_mut().unwrap().remove("elapsedMs");
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn hexagon_examples() {
    let j = run_json(&["dw", "--norm", "mixed:inf,1"]);
    assert!((j["value"].as_f64().unwrap() - 2.25).abs() < 1e-3);
    let j = run_json(&["ib", "--norm", "mixed:inf,1"]);
    assert!((j["value"].as_f64().unwrap() - 8.0 / 9.0).abs() < 1e-3);
}

#[test]
fn equivalence_on_the_euclidean_plane() {
    let out = run_args(["dwconst", "equiv", "--norm", "lp:2", "--grid", "180", "--t-grid", "64"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.lines().any(|l| l.starts_with("pass") && l.ends_with("true")), "{}", out.stdout);
    let j = run_json(&["equiv", "--norm", "lp:2", "--grid", "180", "--t-grid", "64"]);
    let values = j["formulationValues"].as_object().unwrap();
    assert_eq!(values.len(), 6);
    for (k, v) in values {
        assert!((v.as_f64().unwrap() - 2.0).abs() < 1e-6, "{k}");
    }
}

#[test]
fn sphere_csv_lists_the_dodecagon_vertices() {
    let out = run_args(["dwconst", "sphere", "--norm", "regular:12", "-n", "12", "--format", "csv"]);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "x1,x2");
    assert_eq!(lines.len(), 13);
    for (k, row) in lines[1..].iter().enumerate() {
        let xs: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        let a = k as f64 * PI / 6.0;
        assert!((xs[0] - a.cos()).abs() < 1e-11 && (xs[1] - a.sin()).abs() < 1e-11, "row {k}: {row}");
    }
}

#[test]
fn unknown_tokens_exit_with_code_two() {
    let out = run_args(["dwconst", "dw", "--norm", "lq:3"]);
    assert_eq!(out.code, EXIT_SPEC);
    assert!(out.stderr.contains("'lq'"), "{}", out.stderr);

    let out = run_args(["dwconst", "dw", "--norm", "mixed:2,zz"]);
    assert_eq!(out.code, EXIT_SPEC);
    assert!(out.stderr.contains("'zz'"), "{}", out.stderr);

    let out = run_args(["dwconst", "dw", "--norm", "lp:2", "--formulation", "7"]);
    assert_eq!(out.code, EXIT_SPEC);
    assert!(out.stderr.contains("'7'"), "{}", out.stderr);

    for bad in [
        vec!["dwconst", "dw", "--norm", "lp:2", "--grid", "9"],
        vec!["dwconst", "dw", "--norm", "lp:2", "--t-margin", "0.5"],
        vec!["dwconst", "frobnicate", "--norm", "lp:2"],
        vec!["dwconst", "dw"],
        vec!["dwconst", "ib", "--norm", "lp:2", "--oracle"],
    ] {
        assert_eq!(run_args(bad.clone()).code, EXIT_SPEC, "{bad:?}");
    }
}

#[test]
fn formulation_disagreement_exits_with_code_three() {
    // A wide margin cuts the parameter domains differently per formulation.
    let out = run_args(["dwconst", "equiv", "--norm", "lp:inf", "--t-margin", "0.2", "--grid", "64", "--t-grid", "16"]);
    assert_eq!(out.code, EXIT_INTERNAL, "{}", out.stdout);
    assert!(out.stderr.contains("invariant"), "{}", out.stderr);
    assert!(out.stdout.contains("false"));
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dwconst");
    let ok = Command::new(bin).args(["sphere", "--norm", "lp:1", "-n", "4", "--format", "csv"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(ok.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1,x2"));
    let expected = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
    for ((a, b), row) in expected.into_iter().zip(lines) {
        let xs: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((xs[0] - a).abs() < 1e-15 && (xs[1] - b).abs() < 1e-15, "{row}");
    }
    let bad = Command::new(bin).args(["dw", "--norm", "polygon:1,0;0,1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_SPEC));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn validate_and_ortho_run() {
    let j = run_json(&["validate", "--norm", "mixed:2,1", "-n", "2000", "--seed", "7"]);
    assert_eq!(j["isNorm"], true);
    assert_eq!(j["samplesUsed"], 2000);
    let j = run_json(&["ortho", "--norm", "lp:2", "-n", "4"]);
    let pairs = j["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 4);
    assert!(pairs.iter().all(|p| p["baronti"] == true));
}

#[test]
fn dual_reports_the_gap() {
    let j = run_json(&["dual", "--norm", "mixed:2,1", "--grid", "180", "--t-grid", "64"]);
    assert_eq!(j["dualNorm"], "dual(mixed:2,1)");
    let gap = j["gap"].as_f64().unwrap();
    let (a, b) = (j["primalValue"].as_f64().unwrap(), j["value"].as_f64().unwrap());
    assert!((gap - (a - b).abs()).abs() < 1e-15);
}
