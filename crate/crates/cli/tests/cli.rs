use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stubborn")).args(args).output().expect("binary runs")
}

fn report(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn info_motzkin() {
    let r = report(&["info", &fixture("motzkin.poly")], 0);
    assert_eq!(r["schema_version"], "stubborn/run-report/v1");
    let res = &r["results"];
    assert_eq!(res["degree"], 6);
    assert_eq!(res["half_support"]["count"], 4);
    let mut hull: Vec<Vec<u64>> = serde_json::from_value(res["newton_polytope"]["vertices"].clone()).unwrap();
    hull.sort();
    assert_eq!(hull, vec![vec![0, 0, 6], vec![2, 4, 0], vec![4, 2, 0]]);
}

#[test]
fn zero_polynomial_is_an_input_error() {
    let out = run(&["info", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero polynomial"));
    let out = run(&["info", "X1 + * X2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stengle_deltas() {
    for (at, want) in [("[0:0:1]", 3), ("[0:1:0]", 6)] {
        let r = report(&["delta", &fixture("stengle.poly"), "--at", at], 0);
        assert_eq!(r["results"]["delta"], want);
        assert_eq!(r["results"]["delta_sos"], want.to_string());
    }
    let out = run(&["delta", &fixture("stengle.poly"), "--at", "[1:1:1]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stubborn_verdicts() {
    let r = report(&["stubborn", &fixture("motzkin.poly"), "--no-trees"], 0);
    assert_eq!(r["results"]["verdict"], "stubborn");
    assert_eq!(r["results"]["total"], "10");
    assert_eq!(r["results"]["threshold"], "9");
    let r = report(&["stubborn", &fixture("stengle_T.poly"), "--no-trees"], 0);
    assert_eq!(r["results"]["verdict"], "inconclusive");
    assert_eq!(r["results"]["total"], "9");
}

#[test]
fn inapplicable_exits_two_with_json() {
    let r = report(&["stubborn", &fixture("horn.poly")], 2);
    assert_eq!(r["status"], "inapplicable");
    assert!(r["results"]["hint"].as_str().unwrap().contains("restrict"));
    let r = report(&["stubborn", "X1^2*X3^2 + X2^2*X3^2"], 2);
    assert_eq!(r["status"], "inapplicable");
}

#[test]
fn exact_reports_are_byte_stable() {
    let args = ["stubborn", &fixture("robinson.poly"), "--jobs", "3"];
    let a = run(&args);
    let b = run(&["stubborn", &fixture("robinson.poly"), "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["inputs"]["jobs"] = Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(run(&args).stdout, a.stdout);
}

#[test]
fn sos_examples() {
    let r = report(&["sos", &fixture("motzkin.poly")], 0);
    assert_eq!(r["results"]["method"], "exact-newton");
    assert_eq!(r["results"]["sos"], false);
    assert_eq!(r["results"]["replayed"], true);
    let r = report(&["sos", &fixture("m_half.poly")], 0);
    assert_eq!(r["results"]["sos"], true);
    let r = report(&["sos", &fixture("m_a1.poly"), "--power", "3"], 0);
    assert_eq!(r["results"]["verdict"], "feasible");
    assert_eq!(run(&["sos", &fixture("motzkin.poly"), "--power", "2"]).status.code(), Some(1));
}

#[test]
fn threshold_examples() {
    let r = report(&["threshold", "stengle-c", "--tol", "1e-4"], 0);
    let (lo, hi) = (r["results"]["lo_f64"].as_f64().unwrap(), r["results"]["hi_f64"].as_f64().unwrap());
    let target = (256.0f64 / 27.0).sqrt();
    assert!(lo <= target && target <= hi && hi - lo <= 1e-4);
    let r = report(&["threshold", "motzkin-a", "--power", "3", "--bracket", "1", "3", "--tol", "0.05"], 0);
    let (lo, hi) = (r["results"]["lo_f64"].as_f64().unwrap(), r["results"]["hi_f64"].as_f64().unwrap());
    assert!(lo <= 2.56548 && 2.56548 <= hi);
    assert_eq!(run(&["threshold", "stengle-c", "--bracket", "3.5", "4"]).status.code(), Some(1));
    assert_eq!(run(&["threshold", "nope"]).status.code(), Some(1));
}

#[test]
fn transfers() {
    let q = fixture("choi_lam_q.poly");
    let base = "X1^4*X2^2 + X1^2*X2^4 - 3*X1^2*X2^2 + 1";
    let r = report(&["restrict", &q, "--set", "X3=X1*X2", "--set", "X4=1", "--base", base, "--certify-base"], 0);
    assert_eq!(r["results"]["transfer"]["verdict"], "stubborn");
    let out = run(&["restrict", &q, "--set", "X3=X1*X2", "--set", "X4=2", "--base", base]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("-7"));
    let r = report(&["lift", &fixture("motzkin.poly"), "--m", "1", "--certify-base"], 0);
    assert_eq!(r["results"]["transfer"]["verdict"], "stubborn");
    assert_eq!(r["results"]["transfer"]["reducible"], true);
}
