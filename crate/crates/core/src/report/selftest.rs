//! Bundled fixtures plus the property suites at reduced size.

use super::build::{enumerate_report, fixture_report, Options};
use super::input::parse_fixture;
use super::{DiagnosticReport, Outcome};
use crate::curve::{cover_pg_smooth, twisted_plurigenus};
use crate::fixtures::bundled::BUNDLED;
use crate::fixtures::random::{random_lmhs, random_nilpotent};
use crate::metric::{adapted_degree, asymptotic_profile, PeriodFrame};
use crate::mhs::{validate_lmhs, weight_filtration_of};
use crate::topology::{euler, reconstruct_betti_x, surgery_report, SurgeryDatum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

/// Expected exit code and evidence entries of a bundled fixture.
fn expectation(name: &str) -> (i32, Vec<(&'static str, Value)>) {
    match name {
        "elliptic" => (0, vec![("p", json!("2y")), ("d", json!(1))]),
        "pure" => (0, vec![("d", json!(0)), ("classification", json!("FiniteDistance"))]),
        "two_block" => (0, vec![("p", json!("4y^2")), ("adapted_degree", json!(2))]),
        "offset_monodromy" => (0, vec![("d", json!(0)), ("nf_annihilated", json!(true))]),
        "tree" => (1, vec![("genus_formula", json!(3))]),
        "banana" => (1, vec![("generic_genus", json!(3)), ("degrees", json!([2, 2]))]),
        "two_loop" => (1, vec![("degrees", json!([4]))]),
        "smooth_curve" => (0, vec![("E", json!(0)), ("genus_formula", json!(3))]),
        "surgery" => (0, vec![("betti_Xs", json!([1, 0, 1, 204, 1, 0, 1])), ("betti_X0", json!([1, 0, 1, 203, 1, 0, 1]))]),
        "surgery_three_nodes" => (0, vec![("betti_Xs", json!([1, 0, 3, 12, 3, 0, 1]))]),
        "pg_cy" => (0, vec![("classification", json!("FiniteDistance"))]),
        _ => (0, vec![]),
    }
}

/// A semantic corruption per kind: negate `Q`, raise a genus and drop a node,
/// forget the relations, or raise the generic `p_g`.
fn corrupt(source: &str) -> String {
    let mut v: Value = serde_json::from_str(source).expect("bundled fixture is JSON");
    let o = v.as_object_mut().expect("fixture object");
    if let Some(Value::Array(rows)) = o.get_mut("Q") {
        for x in rows.iter_mut().flat_map(|r| r.as_array_mut().expect("row").iter_mut()) {
            *x = json!(-x.as_i64().expect("integer entry"));
        }
    } else if let Some(Value::Array(vs)) = o.get_mut("vertices") {
        let g = vs[0]["genus"].as_i64().expect("genus");
        vs[0]["genus"] = json!(g + 1);
        if let Some(Value::Array(es)) = o.get_mut("edges") {
            es.pop();
        }
    } else if o.contains_key("relation_rank") {
        o.insert("relation_rank".into(), json!(0));
    } else if let Some(g) = o.get("pg_generic").and_then(Value::as_i64) {
        o.insert("pg_generic".into(), json!(g + 1));
    }
    v.to_string()
}

fn fixture_row(name: &str, source: &str) -> (bool, String) {
    let (code, expected) = expectation(name);
    let report = match parse_fixture(source).and_then(|f| fixture_report(&f, &Options::default())) {
        Ok(r) => r,
        Err(e) => return (false, format!("input error: {e}")),
    };
    if report.exit_code() != code {
        return (false, format!("exit {} (expected {code})", report.exit_code()));
    }
    for (key, want) in expected {
        if report.evidence.get(key) != Some(&want) {
            return (false, format!("{key} = {:?} (expected {want})", report.evidence.get(key)));
        }
    }
    (true, format!("exit {code}: {}", report.summary))
}

fn suite_weight_filtration() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let cases: Vec<_> = (0..60).map(|_| random_nilpotent(&mut rng, 6)).collect();
    let bad = cases.par_iter().filter(|c| weight_filtration_of(&c.n, c.center) != c.known).count();
    (bad == 0, format!("{} random nilpotents, {bad} mismatches", cases.len()))
}

fn suite_lmhs() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let cases: Vec<_> = (0..20).map(|_| random_lmhs(&mut rng, 6)).collect();
    let bad = cases
        .par_iter()
        .filter(|c| {
            if !validate_lmhs(&c.lmhs).all_pass() {
                return true;
            }
            let frame = PeriodFrame::standard(c.lmhs.clone());
            match asymptotic_profile(&frame) {
                Ok(p) => p.d != c.expected_degree || adapted_degree(&frame).degree != p.d as i64,
                Err(_) => true,
            }
        })
        .count();
    (bad == 0, format!("{} random structures, {bad} failures", cases.len()))
}

fn suite_curves() -> (bool, String) {
    let mut bad = 0;
    for g in 2..=10i64 {
        for m in 1..=10u32 {
            let sum: i64 = (1..=m)
                .map(|k| if k == 1 { g } else { (2 * k as i64 - 1) * (g - 1) })
                .sum();
            if sum != cover_pg_smooth(g, m) {
                bad += 1;
            }
        }
    }
    let neg = (0..=3u32)
        .flat_map(|g| (0..=6u32).flat_map(move |d| (1..=6u32).map(move |k| (g, d, k))))
        .filter(|&(g, d, k)| twisted_plurigenus(g, d, k).is_ok_and(|h| h < 0))
        .count();
    let e = enumerate_report(3, 3, 2, true);
    let ok = bad == 0 && neg == 0 && !e.failed();
    (ok, format!("cover sums {bad} mismatches, {neg} negative plurigenera, enumeration: {}", e.summary))
}

fn suite_surgery() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut bad = 0;
    for _ in 0..200 {
        let b2 = rng.gen_range(0..20);
        let b3 = rng.gen_range(0..300);
        let k = rng.gen_range(1..=b2.max(1) + 3);
        let rho = rng.gen_range(0..=k);
        let Ok(d) = SurgeryDatum::new(&[1, 0, b2, b3, b2, 0, 1], k, rho) else { continue };
        let s = surgery_report(&d).expect("valid datum");
        if euler(&s.betti_smooth) != euler(&d.betti_x) - 2 * k || reconstruct_betti_x(&s.betti_smooth, k, rho) != d.betti_x {
            bad += 1;
        }
    }
    (bad == 0, format!("{bad} failures"))
}

pub fn selftest(corrupted: Option<&str>) -> DiagnosticReport {
    let mut r = DiagnosticReport::new("selftest");
    let rows: Vec<(String, bool, String)> = BUNDLED
        .par_iter()
        .map(|b| {
            let source = if corrupted == Some(b.name) { corrupt(b.source) } else { b.source.to_string() };
            let (ok, msg) = fixture_row(b.name, &source);
            (format!("fixture {}", b.name), ok, msg)
        })
        .collect();
    let suites: [(&str, fn() -> (bool, String)); 4] = [
        ("weight filtration", suite_weight_filtration),
        ("limiting structures", suite_lmhs),
        ("curves", suite_curves),
        ("surgery", suite_surgery),
    ];
    let suite_rows: Vec<(String, bool, String)> = suites
        .par_iter()
        .map(|(name, run)| {
            let (ok, msg) = run();
            (format!("suite {name}"), ok, msg)
        })
        .collect();
    for (name, ok, msg) in rows.into_iter().chain(suite_rows) {
        r.check(name, ok, msg);
    }
    if let Some(name) = corrupted {
        r.evidence("corrupted", name);
    }
    let failed = r.verdicts.iter().filter(|v| v.outcome == Outcome::Fail).count();
    r.evidence("rows", r.verdicts.len());
    r.evidence("failed", failed);
    r.summary = format!("{} rows, {failed} failed", r.verdicts.len());
    r
}
