//! End-to-end tests of the binary: exit-code contract, determinism, and the
//! wire formats.

use std::process::{Command, Output};

fn selfconj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfconj"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn expand_emits_the_worked_one_point_series() {
    let out = selfconj(&[
        "expand",
        "--n",
        "1",
        "--q-order",
        "9",
        "--deregularize",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["deregularized"], true);
    assert_eq!(v["n"], 1);
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 10);
    // q¹ coefficient is (t−1)/√t = u − u^{-1}: numerator two terms, denominator 1.
    let q1 = &coeffs[1];
    assert_eq!(q1["numerator"].as_array().unwrap().len(), 2);
    assert_eq!(q1["denominator"].as_array().unwrap().len(), 1);
    // The constant term keeps its pole factor.
    assert_eq!(coeffs[0]["denominator"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_qdiff_passes_and_echoes_seed() {
    let out = selfconj(&[
        "verify-qdiff",
        "--n",
        "2",
        "--q-order",
        "6",
        "--points",
        "5",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pair_count"], 3);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec![
            "verify-qdiff", "--n", "2", "--q-order", "5", "--points", "4", "--seed", "99",
        ],
        vec!["sample", "--r", "0.03", "--samples", "4", "--seed", "11"],
        vec![
            "shape", "--r", "0.02", "--samples", "25", "--seed", "3", "--x-grid", "0.5,1.0",
            "--format", "csv",
        ],
        vec!["bracket", "--indices", "2,4", "--q-order", "10"],
    ] {
        let first = selfconj(&args);
        let second = selfconj(&args);
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn exit_code_contract() {
    // 0 on pass.
    let ok = selfconj(&["verify-theta", "--q-order", "8"]);
    assert_eq!(ok.status.code(), Some(0));
    // 1 on identity failure, with a JSON failure report on stdout.
    let fail = selfconj(&["verify-theta", "--q-order", "8", "--inject-error"]);
    assert_eq!(fail.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&fail.stdout).unwrap();
    let failing = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["status"] == "fail")
        .expect("a failing identity");
    assert!(failing["first_failure"].is_object());
    // 2 on usage errors.
    let usage = selfconj(&["verify-qdiff", "--n", "2", "--q-order", "4"]); // missing --seed
    assert_eq!(usage.status.code(), Some(2));
    let unknown = selfconj(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(2));
    let bad_flag = selfconj(&["expand", "--n", "1", "--q-order", "3", "--unknown-flag"]);
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn decompose_fails_at_wrong_weight_with_exit_1() {
    let ok = selfconj(&["decompose", "--indices", "2,2", "--q-order", "30"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["decomposition"]["weight"], 4);

    let bad = selfconj(&[
        "decompose", "--indices", "2,2", "--weight", "6", "--q-order", "30",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["status"], "fail");
}

#[test]
fn shape_emits_the_csv_schema() {
    let out = selfconj(&[
        "shape", "--r", "0.02", "--samples", "10", "--seed", "5", "--x-grid", "1.0",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "r,x,epsilon,fraction_within,mean_abs_dev,n_samples,seed"
    );
    let row = lines.next().unwrap();
    assert!(row.ends_with(",10,5"));
    // 12 significant digits in scientific notation.
    assert!(row.starts_with("2.00000000000e-2,"));
}

#[test]
fn sample_is_seed_dependent() {
    let a = selfconj(&["sample", "--r", "0.03", "--samples", "3", "--seed", "1"]);
    let b = selfconj(&["sample", "--r", "0.03", "--samples", "3", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 1);
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("selfconj-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bracket.json");
    let out = selfconj(&[
        "bracket",
        "--indices",
        "2",
        "--q-order",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["agree"], true);
    std::fs::remove_file(path).ok();
}

#[test]
fn eisenstein_verifiers_pass() {
    let out = selfconj(&["verify-eisenstein", "--q-order", "20", "--l-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = selfconj(&[
        "verify-eisenstein-form",
        "--l-max",
        "4",
        "--q-order",
        "8",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("eisenstein_form_of_G"));
    assert!(text.contains("pass"));
}

#[test]
fn verify_onepoint_and_twopoint_pass() {
    let one = selfconj(&["verify-onepoint", "--q-order", "8"]);
    assert_eq!(one.status.code(), Some(0));
    let two = selfconj(&["verify-twopoint", "--q-order", "4"]);
    assert_eq!(two.status.code(), Some(0));
}

#[test]
fn asymptotics_passes() {
    let out = selfconj(&["asymptotics"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coefficients_match"], true);
    let rows = v["numeric"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
}
