//! Golden-file and exit-code tests for `chact`.
//!
//! Run with `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden`.

mod common;

use common::{chact, golden_failures, round_trip_failures};
use serde_json::Value;

#[test]
fn golden_outputs_and_exit_codes() {
    let failures = golden_failures();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn documents_round_trip_byte_identically() {
    let failures = round_trip_failures();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&chact(&full).stdout).unwrap()
}

#[test]
fn exact_values() {
    assert_eq!(json(&["fd", "--expr", "x^2", "--at", "3", "--delta", "1"])["value"], "7");
    assert_eq!(json(&["fd", "--expr", "x^3", "--at", "2", "--delta", "3"])["value"], "117");
    assert_eq!(json(&["fd", "--expr", "5", "--at", "11", "--delta", "-2"])["value"], "0");
    assert_eq!(json(&["bool", "--vars", "2", "--table", "0001", "--dvar", "1"])["derivative"], "0101");
    assert_eq!(json(&["bool", "--vars", "2", "--table", "0110", "--dvar", "2"])["derivative"], "1111");
    assert_eq!(json(&["bool", "--vars", "2", "--table", "1111", "--dvar", "1"])["derivative"], "0000");
    let k = json(&["kpoly", "--algebra", "boolean", "--poly", "x.x", "--dvar", "x", "--taylor"]);
    assert_eq!(k["derivative"], "x.1 + x.1");
    assert_eq!(k["checks"][0]["report"]["passed"], true);
    let incr = ["incr", "--dom", "tests/fixtures/z5.json", "--cod", "tests/fixtures/z5.json"];
    let r = json(&[&incr[..], &["tests/fixtures/square_z5.json", "--start", "1", "--changes", "1,2"]].concat());
    assert_eq!(r["output"], 1);
    assert_eq!(r["input"], 4);
    let r = json(&[&incr[..], &["tests/fixtures/square_z5.json", "--start", "2"]].concat());
    assert_eq!(r["output"], 4);
    assert_eq!(r["trace"], Value::Array(vec![]));
}

#[test]
fn over_cap_towers_report_their_sizes() {
    let r = chact(&["tower", "--model", "group:Z2", "--map", "tests/fixtures/not_z2.json", "--depth", "5"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("2, 4, 16, 256, 65536, 4294967296"), "{}", r.stderr);
    let r = chact(&[
        "tower",
        "--model",
        "group:Z2",
        "--map",
        "tests/fixtures/not_z2.json",
        "--depth",
        "4",
        "--max-space",
        "1000",
    ]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("2, 4, 16, 256, 65536"), "{}", r.stderr);
    let r = chact(&[
        "tower",
        "--model",
        "group:Z2",
        "--map",
        "tests/fixtures/not_z2.json",
        "--depth",
        "4",
        "--max-space",
        "65536",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn sampled_reports_carry_their_seed() {
    let (a, m) = ("tests/fixtures/z101.json", "tests/fixtures/triple_z101.json");
    let args = ["check-map", "--dom", a, "--cod", a, m, "--require-stable", "--seed", "7"];
    let v = json(&args);
    let sampled = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["report"]["mode"]["kind"] == "sampled")
        .map(|c| c["report"]["mode"]["seed"].clone())
        .collect::<Vec<_>>();
    assert_eq!(sampled.len(), 2);
    assert!(sampled.iter().all(|s| s == 7));
    assert_eq!(json(&args), v);
}

#[test]
fn json_reports_are_canonical() {
    let r = chact(&["check-action", "tests/fixtures/z4.json", "--format", "json"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(format!("{v}\n"), r.stdout);
}

#[test]
fn usage_errors_are_input_errors() {
    assert_eq!(chact(&["frobnicate"]).code, 2);
    assert_eq!(chact(&["fd", "--expr", "x", "--at", "one"]).code, 2);
    assert_eq!(chact(&["kpoly", "--algebra", "boolean", "--format", "yaml"]).code, 2);
}
