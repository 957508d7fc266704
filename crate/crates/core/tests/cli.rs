mod common;

use common::fixture_path;
use degen::report::DiagnosticReport;
use serde_json::Value;
use std::process::{Command, Output};

fn degen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degen")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--report", "json"]);
    let out = degen(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text:?}"));
    (out.status.code().unwrap(), v)
}

fn code(args: &[&str]) -> i32 {
    degen(args).status.code().unwrap()
}

fn tmp(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("degen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn clean_structures_exit_zero() {
    let (c, v) = json(&["mhs", &fixture_path("elliptic")]);
    assert_eq!(c, 0);
    assert_eq!(v["schema"], "degen/1");
    assert_eq!(v["kind"], "mhs");
    let (c, v) = json(&["metric", &fixture_path("elliptic"), "--y0", "1", "--Y", "1000000"]);
    assert_eq!(c, 0);
    assert_eq!(v["evidence"]["p"], "2y");
    assert_eq!(v["evidence"]["poincare_limit"], "1/4");
    let len: f64 = v["evidence"]["length"]["value"].as_str().unwrap().parse().unwrap();
    assert!((len - 0.5 * 1e6f64.ln()).abs() < 1e-8);
}

#[test]
fn failing_criteria_exit_one() {
    let (c, v) = json(&["curve", &fixture_path("tree"), "--m", "1,2,3"]);
    assert_eq!(c, 1);
    let residuals: Vec<i64> = v["evidence"]["gm_tests"].as_array().unwrap().iter().map(|t| t["residual"].as_i64().unwrap()).collect();
    assert_eq!(residuals, vec![0, 1, 2]);
    assert_eq!(code(&["curve", &fixture_path("smooth_curve")]), 0);
    let unstable = tmp("unstable.json", r#"{"kind": "curve", "vertices": [{"genus": 0}, {"genus": 3}], "edges": [[0, 1]]}"#);
    assert_eq!(code(&["curve", &unstable]), 1);
    let flat = tmp("flat.json", r#"{"kind": "surgery", "betti_X": [1, 0, 2, 10, 2, 0, 1], "nodes": 2, "relation_rank": 0}"#);
    assert_eq!(code(&["surgery", &flat]), 1);
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(code(&["mhs", "/nonexistent/x.json"]), 2);
    assert_eq!(code(&["mhs", &tmp("broken.json", "{not json")]), 2);
    assert_eq!(code(&["mhs", &fixture_path("tree")]), 2);
    let sym = tmp("sym.json", r#"{"weight": 1, "Q": [[1, 0], [0, 1]], "N": [[0, 0], [0, 0]], "F": {"1": [[1, 0]]}}"#);
    assert_eq!(code(&["mhs", &sym]), 2);
    assert_eq!(code(&["metric", &fixture_path("elliptic"), "--y0", "2", "--Y", "1"]), 2);
    assert_eq!(code(&["metric", &fixture_path("elliptic"), "--y0", "1"]), 2);
    assert_eq!(code(&["curve", &fixture_path("tree"), "--m", "0,2,3"]), 2);
    assert_eq!(code(&["pg", "--generic", "1", "--components", "1,1"]), 2);
    assert_eq!(code(&["pg"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn geometric_genus_from_flags_or_fixture() {
    let (c, v) = json(&["pg", "--generic", "3", "--components", "2,0"]);
    assert_eq!(c, 0);
    assert_eq!(v["evidence"]["classification"], "InfiniteDistance");
    let (c, v) = json(&["pg", &fixture_path("pg_cy")]);
    assert_eq!(c, 0);
    assert_eq!(v["evidence"]["classification"], "FiniteDistance");
}

#[test]
fn json_round_trip_and_out_file() {
    let out = tmp("report.json", "");
    assert_eq!(code(&["surgery", &fixture_path("surgery"), "--report", "json", "--out", &out]), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let r = DiagnosticReport::from_json(&text).unwrap();
    assert_eq!(r.to_json(), text);
    assert_eq!(r.evidence["betti_Xs"], serde_json::json!([1, 0, 1, 204, 1, 0, 1]));
    let plain = String::from_utf8(degen(&["surgery", &fixture_path("surgery")]).stdout).unwrap();
    assert!(plain.contains("PASS"), "{plain}");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_degen"))
            .args(["enumerate", "--vmax", "3", "--emax", "4", "--gmax", "2", "--check-smoothability", "--report", "json"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("1"));
    assert_eq!(one, run("4"));
    assert_eq!(code(&["curve", "enumerate", "--vmax", "2", "--emax", "2", "--gmax", "2"]), 0);
}

#[test]
fn selftest_and_corruption() {
    let (c, v) = json(&["selftest"]);
    assert_eq!(c, 0, "{v}");
    assert_eq!(v["evidence"]["failed"], 0);
    for name in ["elliptic", "tree", "surgery", "pg_cy"] {
        let (c, v) = json(&["selftest", "--corrupt", name]);
        assert_eq!(c, 1, "{name}");
        assert_eq!(v["evidence"]["failed"], 1, "{name}");
    }
}
