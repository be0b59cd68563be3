use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .expect("golden file")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_systole"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn lattice_hermite_on_hexagonal() {
    let v = json(&["lattice", "hermite", "--in", &fixture("hex.json")]);
    assert_eq!(v["critical"], true);
    assert_eq!(v["gamma_power"], "4/3");
    assert!((v["gamma_approx"].as_f64().unwrap() - 1.1547005383792515).abs() < 1e-12);
}

#[test]
fn lattice_minima_on_z3() {
    let v = json(&["lattice", "minima", "--in", &fixture("z3.json"), "--k", "3"]);
    assert_eq!(v["lambda_sq"], serde_json::json!(["1", "1", "1"]));
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 3);
}

#[test]
fn lattice_dual_of_fcc() {
    let v = json(&["lattice", "dual", "--in", &fixture("fcc.json")]);
    assert_eq!(
        v["basis"],
        serde_json::json!([
            ["1/2", "1/2", "-1/2"],
            ["1/2", "-1/2", "1/2"],
            ["-1/2", "1/2", "1/2"]
        ])
    );
}

#[test]
fn lattice_bm_reduce_and_critical() {
    let v = json(&["lattice", "bm", "--in", &fixture("fcc.json")]);
    assert_eq!(v["value_sq"], "3/2");
    let v = json(&["lattice", "reduce", "--in", &fixture("fcc.json")]);
    assert_eq!(v["transform"].as_array().unwrap().len(), 3);
    let v = json(&["lattice", "critical", "--in", &fixture("fcc.json")]);
    assert_eq!(
        (v["critical"].clone(), v["dual_critical"].clone()),
        (true.into(), true.into())
    );
}

#[test]
fn torus_commands() {
    let v = json(&["torus", "verify-loewner", "--in", &fixture("hex.json")]);
    assert_eq!(v["equality"], true);
    let v = json(&["torus", "verify-gromov", "--in", &fixture("fcc.json")]);
    assert_eq!(v["equality"], true);
    let v = json(&["torus", "verify-52", "--in", &fixture("z3.json")]);
    assert_eq!(v["satisfied"], true);
    assert!(v["tightness"].as_f64().unwrap() < 1.0);
    let v = json(&["torus", "systoles", "--in", &fixture("hex.json")]);
    assert_eq!(
        (v["systole_sq"].clone(), v["codim1_systole_sq"].clone()),
        ("1".into(), "1".into())
    );
    let v = json(&["torus", "pu-round", "--curvature", "4"]);
    assert_eq!(v["equality"], true);
}

#[test]
fn filling_commands() {
    let v = json(&["filling", "catalog", "--space", "circle", "--length", "6"]);
    assert_eq!(v["fillrad"], 1.0);
    let v = json(&["filling", "extrema", "--i", "2", "--length", "1"]);
    assert_eq!(v["d_i"], 0.4);
    let v = json(&[
        "filling",
        "bound",
        "--in",
        &fixture("circle24.json"),
        "--max-subset",
        "3",
        "--mode",
        "exhaustive",
    ]);
    assert!((v["R"].as_f64().unwrap() - 1.0).abs() <= 6.0 / 48.0);
    let v = json(&[
        "filling",
        "bound",
        "--in",
        &fixture("circle24.json"),
        "--max-subset",
        "3",
        "--mode",
        "greedy",
    ]);
    assert!(v["R"].as_f64().unwrap() >= 1.0 - 1e-12);
    let v = json(&[
        "filling",
        "check-91b",
        "--space",
        "rp",
        "--n",
        "3",
        "--curvature",
        "4",
    ]);
    assert_eq!(v["equality"], true);
    let v = json(&["filling", "catalog", "--space", "cp3"]);
    assert_eq!(v["strict_lower_bound"], true);
}

#[test]
fn bundle_outputs() {
    let v = json(&["bundle", "--euler", "-1"]);
    assert_eq!(v["h1"]["torsion"], serde_json::json!([]));
    assert_eq!(v["cover_h1_rank"], 1);
    let out = run(&["bundle", "--euler", "2"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden("bundle_e2.json")
    );
    let out = run(&["torus", "verify-loewner", "--in", &fixture("hex.json")]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden("loewner_hex.json")
    );
}

#[test]
fn exit_codes() {
    let out = run(&["bundle", "--euler", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trivial bundle"));
    let out = run(&["lattice", "minima", "--in", &fixture("indefinite.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("positive definite"));
    let out = run(&["lattice", "minima", "--in", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["lattice", "minima", "--in", &fixture("missing.json")]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["filling", "check-91b", "--space", "sphere", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["--tol", "-1", "bundle", "--euler", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["lattice", "frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "filling",
        "bound",
        "--in",
        &fixture("circle24.json"),
        "--max-subset",
        "4",
        "--mode",
        "greedy",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = [
        "lattice",
        "critical",
        "--in",
        &fixture("fcc.json"),
        "--format",
        "table",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
