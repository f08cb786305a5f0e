use std::process::{Command, Output};

fn crlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn verify_passing_scenario_exits_zero() {
    let out = crlab(&["verify", "d4-gcr-not-gcrk"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS perm"));
}

#[test]
fn verify_failing_scenario_exits_one() {
    let out = crlab(&["verify", "d4-gir-not-gcr"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL n12-u11"));
}

#[test]
fn unknown_scenario_lists_registered_names() {
    let out = crlab(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("a2-conjugacy") && err.contains("w0-combinatorics"));
}

#[test]
fn json_report_has_schema_fields() {
    let out = crlab(&["verify", "w0-combinatorics", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["scenario"], "w0-combinatorics");
    assert_eq!(v["pass"], true);
    assert!(v["elapsed_ms"].is_u64());
    let step = &v["steps"][0];
    for key in ["name", "anchor", "status", "expected", "actual"] {
        assert!(step.get(key).is_some(), "missing {key}");
    }
    assert_eq!(step["status"], "PASS");
}

#[test]
fn json_is_reproducible_apart_from_timing() {
    let strip = |s: String| {
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        v["elapsed_ms"] = 0.into();
        v
    };
    let a = strip(stdout(&crlab(&[
        "verify",
        "a2-conjugacy",
        "--format",
        "json",
        "--seed",
        "9",
    ])));
    let b = strip(stdout(&crlab(&[
        "verify",
        "a2-conjugacy",
        "--format",
        "json",
        "--seed",
        "9",
    ])));
    assert_eq!(a, b);
}

#[test]
fn collect_conjugation() {
    let out = crlab(&["collect", "e6(s)*e9(s)·n[a]·sigma·e9(s)*e6(s)"]);
    assert_eq!(stdout(&out).trim(), "n[a]·sigma·e12(s^2)");
}

#[test]
fn collect_with_order_renders_every_position() {
    let out = crlab(&[
        "collect",
        "e1(x)*e2(y)*e1(x)",
        "--system",
        "a2",
        "--order",
        "1,2,3",
    ]);
    assert_eq!(stdout(&out).trim(), "e1(0)*e2(y)*e3(x*y)");
}

#[test]
fn pairing_with_theta_coweight() {
    let out = crlab(&["pairing", "11", "a+2b+g+d"]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = crlab(&["pairing", "12", "a+2b+g+d"]);
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn rparabolic_json() {
    let out = crlab(&["rparabolic", "a+2b+g+d", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["u"], serde_json::json!([4, 5, 6, 7, 8, 9, 10, 11, 12]));
    assert_eq!(v["l"], serde_json::json!([1, 2, 3, -1, -2, -3]));
}

#[test]
fn bad_word_is_an_error() {
    let out = crlab(&["collect", "e99(x)"]);
    assert_eq!(out.status.code(), Some(2));
}
