use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use quatchar::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, Value) {
    let argv = std::iter::once("quatchar").chain(args.iter().copied());
    let (code, out) = run(argv);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}")))
}

fn quat(v: &Value) -> [f64; 4] {
    let a = v.as_array().expect("4-array");
    [0, 1, 2, 3].map(|i| a[i].as_f64().unwrap())
}

fn close(a: [f64; 4], b: [f64; 4], tol: f64) -> bool {
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

const C_ZERO: &str = r#"{"n": 3, "entries": [["j", "-1", "0"], ["k", "j", "i"], ["i", "i", "1"]]}"#;

fn temp_matrix(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

#[test]
fn sdet_of_unit_diagonal() {
    let f = temp_matrix(r#"{"n": 3, "entries": [["i", "0", "0"], ["0", "j", "0"], ["0", "0", "k"]]}"#);
    let (code, v) = call(&["sdet", "--input", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["sdet"].as_f64().unwrap(), 1.0);
}

#[test]
fn array_entries_are_accepted() {
    let f = temp_matrix(r#"{"n": 1, "entries": [[[0, 3, 0, 4]]]}"#);
    let (_, v) = call(&["sdet", "--input", f.path().to_str().unwrap()]);
    assert_eq!(v["sdet"].as_f64().unwrap(), 5.0);
}

#[test]
fn pole_of_discontinuity_matrix() {
    let (code, v) = call(&["pole", "--input", &data("paper_sec5.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(quat(&v["pole"]), [0.0, -1.0, 0.0, 0.0]);
}

#[test]
fn hc_check_on_example() {
    let (code, v) = call(&["hc-check", "--input", &data("paper_ex63.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(v["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn charfn_report() {
    let (_, v) = call(&["charfn", "--input", &data("paper_sec63_example.json")]);
    assert_eq!(v["kind"], "Generic3x3");
    assert_eq!(quat(&v["pole"]), [-2.0, 0.0, 0.0, 0.0]);
    assert_eq!(quat(&v["pole_value"]), [-4.0, -4.0, 8.0, 0.0]);
    assert!(v["expr"].as_str().unwrap().contains("inv("));
}

#[test]
fn eval_at_pole_and_nearby() {
    let input = data("paper_sec5.json");
    let (_, at) = call(&["eval", "--input", &input, "--lambda", "-i"]);
    assert_eq!(at["at_pole"], true);
    assert!(close(quat(&at["value"]), [1.0, -1.0, 2.0, -2.0], 1e-12));
    let (_, near) = call(&["eval", "--input", &input, "--lambda", "[0,-1,1e-6,0]"]);
    assert_eq!(near["at_pole"], false);
    assert!(close(quat(&near["value"]), [1.0, 1.0, 2.0, 2.0], 1e-5));
    let (_, wide) = call(&["eval", "--input", &input, "--lambda", "[0,-1,1e-6,0]", "--tol", "1e-3"]);
    assert_eq!(wide["at_pole"], true);
}

#[test]
fn demo_discontinuity_shows_jump() {
    let input = data("paper_sec5.json");
    let (code, v) = call(&["demo-discontinuity", "--input", &input, "--direction", "j"]);
    assert_eq!(code, EXIT_OK);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let last = quat(&rows.last().unwrap()["value"]);
    assert!(close(last, [1.0, 1.0, 2.0, 2.0], 1e-4));
    assert_eq!(quat(&v["pole_value"]), [1.0, -1.0, 2.0, -2.0]);
    assert_eq!(quat(&v["limit"]), [1.0, 1.0, 2.0, 2.0]);

    let (_, v) = call(&["demo-discontinuity", "--input", &input, "--direction", "1", "--steps", "1e-2,1e-6"]);
    let rows = v["rows"].as_array().unwrap();
    assert!(close(quat(&rows[1]["value"]), [-1.0, 1.0, -2.0, 2.0], 1e-5));
}

#[test]
fn demo_discontinuity_rejects_zero_direction() {
    let (code, v) = call(&["demo-discontinuity", "--input", &data("paper_sec5.json"), "--direction", "0"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(v["error"], "usage");
}

#[test]
fn demo_discontinuity_needs_pole() {
    let f = temp_matrix(C_ZERO);
    let (code, v) = call(&["demo-discontinuity", "--input", f.path().to_str().unwrap(), "--direction", "j"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(v["error"], "unsupported");
}

#[test]
fn counterexample_demo() {
    let (_, v) = call(&["demo-counterexample"]);
    let e = &v["sigma_matrix"]["entries"];
    assert_eq!(quat(&e[0][0]), [-3.0, 0.0, 0.0, 0.0]);
    assert_eq!(quat(&e[1][1]), [1.0, 0.0, 0.0, 0.0]);
    assert_eq!(quat(&e[0][1]), [0.0; 4]);
}

#[test]
fn sigma_verb() {
    let (_, v) = call(&["sigma", "--input", &data("paper_sec7_counterexample.json"), "--lambda", "1+2i+0.5j"]);
    assert_eq!(v["sigma"].as_f64().unwrap(), 24.5625);
}

#[test]
fn spectra_verbs() {
    let input = data("paper_sec5.json");
    let (code, left) = call(&["left-eigs", "--input", &input, "--seed", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(left["kind"], "left");
    assert!(left["label"].as_str().unwrap().contains("possibly incomplete"));
    assert!(!left["values"].as_array().unwrap().is_empty());
    let (_, right) = call(&["right-eigs", "--input", &input]);
    assert_eq!(right["kind"], "right-representative");
    assert_eq!(right["values"].as_array().unwrap().len(), 3);
}

#[test]
fn same_seed_same_bytes() {
    let input = data("paper_sec63_example.json");
    let argv = ["quatchar", "left-eigs", "--input", &input, "--seed", "11"];
    assert_eq!(run(argv), run(argv));
}

#[test]
fn usage_errors() {
    for args in [
        vec![],
        vec!["frobnicate"],
        vec!["sdet"],
        vec!["eval", "--input", "x.json"],
        vec!["eval", "--input", "x.json", "--lambda", "1+"],
        vec!["left-eigs", "--input", "x.json", "--tol", "-1"],
        vec!["left-eigs", "--input", "x.json", "--seed", "abc"],
        vec!["demo-discontinuity", "--input", "x.json", "--direction", "j", "--steps", "0.1,nan"],
        vec!["sdet", "--input", "/definitely/missing.json"],
    ] {
        let (code, v) = call(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert_eq!(v["error"], "usage", "{args:?}");
    }
    let f = temp_matrix(r#"{"n": 2, "entries": [["1"]]}"#);
    assert_eq!(call(&["sdet", "--input", f.path().to_str().unwrap()]).0, EXIT_USAGE);
}

#[test]
fn domain_errors() {
    let f = temp_matrix(r#"{"n": 4, "entries": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}"#);
    let path = f.path().to_str().unwrap();
    let (code, v) = call(&["left-eigs", "--input", path]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(v["error"], "unsupported");
    assert_eq!(call(&["charfn", "--input", path]).0, EXIT_DOMAIN);
    let c_zero = temp_matrix(C_ZERO);
    let (code, v) = call(&["pole", "--input", c_zero.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(v["error"], "requires_nonzero_entry");
}

#[test]
fn binary_exit_status_and_stdout() {
    let bin = env!("CARGO_BIN_EXE_quatchar");
    let out = Command::new(bin).args(["pole", "--input", &data("paper_sec5.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"pole":[0.0,-1.0,0.0,0.0]}"#);
    let c_zero = temp_matrix(C_ZERO);
    let out = Command::new(bin).args(["pole", "--input", c_zero.path().to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "usage");
}
