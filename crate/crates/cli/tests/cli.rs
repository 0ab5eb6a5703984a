use std::process::{Command, Output};

use qwreath::qwp::Algebra;
use qwreath::Params;
use serde_json::Value;

fn qwreath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwreath")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const H1: &str = r#"{"terms":[{"t":[0,0],"x":[0,0],"w":[2,1],"c":1}]}"#;

#[test]
fn verify_splitting_succeeds() {
    let out = qwreath(&["--q", "5", "--n", "2", "--k", "0", "--d", "2", "verify", "splitting"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn quadratic_relation_through_mul() {
    let out = qwreath(&["--q", "5", "--n", "2", "mul", H1, H1]);
    assert_eq!(out.status.code(), Some(0));
    let alg = Algebra::from_params(&Params::new(5, 2, 0, 2, 1).unwrap()).unwrap();
    let got = alg.from_json(&stdout_json(&out)).unwrap();
    let h = alg.h(1);
    let want = alg.mul(&alg.from_base(&alg.s(1)), &h).plus(&alg.from_base(&alg.r(1)));
    assert_eq!(got, want);
}

#[test]
fn normal_form_is_idempotent() {
    let first = qwreath(&["--q", "7", "--n", "3", "mul", H1, H1]);
    let text = String::from_utf8(first.stdout).unwrap();
    let again = qwreath(&["--q", "7", "--n", "3", "nf", text.trim()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn exit_codes() {
    assert_eq!(qwreath(&["--q", "6", "nf", H1]).status.code(), Some(2), "q = 6 is not a prime power");
    assert_eq!(qwreath(&["--q", "5", "--n", "3", "nf", H1]).status.code(), Some(2), "3 does not divide 4");
    assert_eq!(qwreath(&["nf", "{not json"]).status.code(), Some(2));
    assert_eq!(qwreath(&["verify", "no_such_check"]).status.code(), Some(2));
    assert_eq!(qwreath(&["frobnicate"]).status.code(), Some(2));
    // the reference coefficients of the worked example contain a discrepancy
    assert_eq!(qwreath(&["verify", "yA_printed"]).status.code(), Some(1));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"q": 7, "n": 3}"#).unwrap();
    let out = qwreath(&["--q", "5", "--n", "1", "--config", path.to_str().unwrap(), "mul", H1, H1]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["flavor"]["n"], 3);
}

#[test]
fn act_on_tensor_and_wreath_vectors() {
    let v = r#"{"terms":[{"f":[1,2],"c":1}]}"#;
    let out = qwreath(&["--q", "5", "--n", "2", "--N", "2", "act", v, H1]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["terms"][0]["f"], serde_json::json!([2, 1]));

    let w = r#"{"specht":"sgn","index":"regular","terms":[{"t":[0,0],"x":[0,0],"c":1}]}"#;
    let out = qwreath(&["--q", "5", "--n", "2", "act", w, H1]);
    assert_eq!(out.status.code(), Some(0));
    let alg = Algebra::from_params(&Params::new(5, 2, 0, 2, 1).unwrap()).unwrap();
    let got = alg.base_from_json(&stdout_json(&out)).unwrap();
    assert_eq!(got, alg.gamma(1).neg());
}

#[test]
fn schur_build_expand_and_compose() {
    let dir = tempfile::tempdir().unwrap();
    let common = ["--q", "5", "--n", "1", "--d", "4", "--N", "2"];
    let p = r#"{"terms":[{"t":[1,0,0,0],"x":[0,1,1,0],"c":1}]}"#;
    let mut args = common.to_vec();
    args.extend(["schur-build", "--matrix", "[[1,1],[2,0]]", "--p", p]);
    let built = qwreath(&args);
    assert_eq!(built.status.code(), Some(0), "{}", String::from_utf8_lossy(&built.stderr));
    let theta = dir.path().join("theta.json");
    std::fs::write(&theta, &built.stdout).unwrap();

    let mut args = common.to_vec();
    args.extend(["schur-expand", "--decompose", theta.to_str().unwrap()]);
    let exp = qwreath(&args);
    assert_eq!(exp.status.code(), Some(0));
    let exp = stdout_json(&exp);
    let words: Vec<Value> = exp["expansion"].as_array().unwrap().iter().map(|e| e["word"].clone()).collect();
    assert_eq!(words.len(), 3);
    assert!(words.contains(&serde_json::json!([2, 3])));
    assert_eq!(exp["theta"].as_array().unwrap().len(), 1);

    let mut args = common.to_vec();
    args.extend(["schur-build", "--matrix", "[[2,0],[0,2]]"]);
    let id = qwreath(&args);
    let id_path = dir.path().join("id.json");
    std::fs::write(&id_path, &id.stdout).unwrap();
    let mut args = common.to_vec();
    args.extend(["schur-compose", id_path.to_str().unwrap(), theta.to_str().unwrap()]);
    let composed = qwreath(&args);
    assert_eq!(composed.status.code(), Some(0));
    let original: Value = serde_json::from_slice(&built.stdout).unwrap();
    assert_eq!(stdout_json(&composed)["value"], original["value"]);
}

#[test]
fn table_has_header_and_all_pairs() {
    let out = qwreath(&["--q", "5", "--n", "2", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("row_basis,col_basis,coeff_json"));
    assert_eq!(lines.count(), 4, "two basis elements H_1 and H_s1 give four products");
}

#[test]
fn verify_writes_json_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.jsonl");
    let out = qwreath(&["--q", "5", "--n", "2", "verify", "splitting", "intertwiner", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(report).unwrap();
    let names: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, ["intertwiner", "splitting"]);
}
