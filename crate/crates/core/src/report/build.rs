//! Turns fixtures into reports by calling the owning modules.

use super::input::{CurveFixture, Fixture, InputError, LmhsFixture};
use super::{DiagnosticReport, Outcome};
use crate::curve::{
    cover_pg_smooth, enumerate_stable_models, genus_formula, gm_incompleteness_test, plurigenus_table, stability_check,
    three_m_criterion, Completeness, ResidualQuadratic, SmoothabilityVerdict, StableModel,
};
use crate::exact::rational::{format_rational, int, rat};
use crate::exact::{GaussianRational, Rational};
use crate::metric::{
    adapted_degree, asymptotic_profile, hodge_norm_matrix, metric_density, poincare_comparison, vertical_path_length,
    Classification, MetricError, PeriodFrame,
};
use crate::mhs::{validate_lmhs, LimitingMixedHodge};
use crate::topology::{
    cy_component_criterion, friedman_smoothability_flag, pg_equality_check, reconstruct_betti_x, surgery_report as betti_report,
    ComponentGenera, SurgeryDatum,
};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeMap;

pub const LOOP_WARNING: &str = "dual graph has self-nodes: d_i counts both branches of a loop, and the twisted \
pluri-canonical count for self-intersections is a convention of this tool";
pub const LENGTH_WARNING: &str = "the length asymptotic uses the factor sqrt(d)/2 derived from G(y) ~ d/(4y^2)";
pub const DEGREE_WARNING: &str = "deg p differs from the block-weighted count sum_k q_k l_k; deg p is authoritative";
pub const RATIONAL_RANK_WARNING: &str = "vanishing-cycle rank is taken over Q; torsion is ignored";

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub ms: Option<Vec<u32>>,
    pub y0: Option<Rational>,
    pub y1: Option<Rational>,
}

pub const DEFAULT_MS: [u32; 3] = [2, 3, 4];

fn gaussian_strings(v: &[GaussianRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn lmhs_evidence(r: &mut DiagnosticReport, l: &LimitingMixedHodge) {
    let (low, high) = l.w().range();
    let w_dims: BTreeMap<String, usize> = (low..=high).map(|k| (k.to_string(), l.w().step(k).dim())).collect();
    let gr_dims: BTreeMap<String, usize> =
        (low..=high).filter(|&k| l.w().graded_dim(k) > 0).map(|k| (k.to_string(), l.w().graded_dim(k))).collect();
    let f_dims: BTreeMap<String, usize> = (0..=l.weight()).map(|p| (p.to_string(), l.f().step(p).dim())).collect();
    r.evidence("weight", l.weight());
    r.evidence("dim", l.dim());
    r.evidence("nilpotency_index", l.endo().nilpotency_index());
    r.evidence("pg", l.pg());
    r.evidence("W_dims", w_dims);
    r.evidence("Gr_dims", gr_dims);
    r.evidence("F_dims", f_dims);
}

pub fn mhs_report(f: &LmhsFixture) -> DiagnosticReport {
    let mut r = DiagnosticReport::new("mhs");
    let l = &f.lmhs;
    lmhs_evidence(&mut r, l);
    let v = validate_lmhs(l);
    for a in &v.axioms {
        let statement = match (&a.detail, &a.witness) {
            (Some(d), Some(w)) => format!("{d}; witness ({})", gaussian_strings(w).join(", ")),
            (Some(d), None) => d.clone(),
            _ => "holds".into(),
        };
        r.check(&a.name, a.pass, statement);
    }
    let failing = v.axioms.iter().filter(|a| !a.pass).count();
    r.evidence("axioms", &v.axioms);
    r.summary = if failing == 0 {
        format!("limiting mixed Hodge structure of weight {} on a {}-dimensional space; all {} axioms hold", l.weight(), l.dim(), v.axioms.len())
    } else {
        format!("{failing} of {} axioms fail", v.axioms.len())
    };
    r
}

pub fn metric_report(f: &LmhsFixture, opts: &Options) -> Result<DiagnosticReport, InputError> {
    let mut r = DiagnosticReport::new("metric");
    let l = &f.lmhs;
    lmhs_evidence(&mut r, l);
    let v = validate_lmhs(l);
    if !v.all_pass() {
        for a in v.axioms.iter().filter(|a| !a.pass) {
            r.check(&a.name, false, a.detail.clone().unwrap_or_default());
        }
        r.evidence("axioms", &v.axioms);
        r.summary = "input is not a valid limiting mixed Hodge structure; metric not computed".into();
        return Ok(r);
    }
    let frame = match &f.frame {
        Some(vs) => PeriodFrame::new(l.clone(), vs.clone()).map_err(|e| InputError::Schema(e.to_string()))?,
        None => PeriodFrame::standard(l.clone()),
    };
    r.evidence("frame", frame.vectors().iter().map(|v| gaussian_strings(v)).collect::<Vec<_>>());

    let m = hodge_norm_matrix(&frame).expect("validated nilpotent");
    let hermitian = [int(1), int(2), rat(1, 3)].iter().all(|y| {
        let at = m.eval_real(y);
        at.conj_transpose() == at
    });
    r.check("hermitian norm matrix", hermitian, "M(y) is Hermitian at y = 1, 2, 1/3");

    let profile = match asymptotic_profile(&frame) {
        Ok(p) => p,
        Err(e) => {
            r.check("norm determinant", false, e.to_string());
            r.summary = format!("p(y) is not admissible: {e}");
            return Ok(r);
        }
    };
    let p = &profile.p;
    r.evidence("p", p.to_string());
    r.evidence("p_coefficients", crate::exact::poly::format_real_coeffs(p));
    r.evidence("d", profile.d);
    r.evidence("classification", profile.classification);
    r.evidence("nf_annihilated", profile.nf_annihilated);
    r.check(
        "distance criterion",
        true,
        format!("deg p = {} and N F^n {} 0, consistent with d = 0 iff N F^n = 0", profile.d, if profile.nf_annihilated { "=" } else { "!=" }),
    );
    let class = match profile.classification {
        Classification::FiniteDistance => "finite distance",
        Classification::InfiniteDistance => "infinite distance",
    };
    r.verdict("classification", Outcome::Info, format!("{class} (d = {})", profile.d));

    let adapted = adapted_degree(&frame);
    r.evidence("adapted_levels", adapted.levels.iter().map(|&(l, q)| json!({"level": l, "multiplicity": q})).collect::<Vec<_>>());
    r.evidence("adapted_degree", adapted.degree);
    let agree = adapted.degree == profile.d as i64;
    r.check("adapted degree", agree, format!("deg p = {}, block-weighted count sum_k q_k l_k = {}", profile.d, adapted.degree));
    if !agree {
        r.warnings.push(DEGREE_WARNING.into());
    }

    let g = metric_density(p).expect("p is nonzero");
    r.evidence("G", g.to_string());
    if profile.d >= 1 {
        let pc = poincare_comparison(&profile).expect("d >= 1");
        r.evidence("poincare_limit", format_rational(&pc.limit));
        r.evidence("poincare_coefficient", &pc.coefficient.expr);
        r.verdict(
            "poincare scaling",
            Outcome::Info,
            format!("y^2 G(y) -> {} = d/4; lengths grow like {} ln y", format_rational(&pc.limit), pc.coefficient.expr),
        );
    }

    let y0 = opts.y0.clone().or_else(|| f.y0.clone());
    let y1 = opts.y1.clone().or_else(|| f.y1.clone());
    match (y0, y1) {
        (None, None) => {}
        (Some(a), Some(b)) => {
            let len = match vertical_path_length(p, &a, &b) {
                Ok(len) => len,
                Err(e @ (MetricError::BadInterval | MetricError::RootInInterval { .. } | MetricError::NotPositiveOnInterval)) => {
                    return Err(InputError::Schema(e.to_string()))
                }
                Err(e) => {
                    r.check("vertical path length", false, e.to_string());
                    r.summary = format!("length computation failed: {e}");
                    return Ok(r);
                }
            };
            r.evidence(
                "length",
                json!({
                    "y0": format_rational(&a),
                    "Y": format_rational(&b),
                    "value": len.value.to_string(),
                    "error_bound": format!("{:e}", len.error_bound),
                }),
            );
            r.verdict(
                "vertical path length",
                Outcome::Info,
                format!("{} over [{}, {}] (error bound {:e})", len.value, format_rational(&a), format_rational(&b), len.error_bound),
            );
            if profile.d >= 1 {
                r.warnings.push(LENGTH_WARNING.into());
            }
        }
        _ => return Err(InputError::Schema("--y0 and --Y must be given together".into())),
    }
    r.summary = format!("p(y) = {p}, d = {}: {class}", profile.d);
    Ok(r)
}

pub fn curve_report(f: &CurveFixture, ms: &[u32]) -> Result<DiagnosticReport, InputError> {
    if ms.is_empty() || ms.contains(&0) {
        return Err(InputError::Schema("--m needs positive integers".into()));
    }
    let mut r = DiagnosticReport::new("curve");
    let model = &f.model;
    let graph = model.graph();
    let v = graph.vertex_count() as i64;
    let e = graph.edge_count() as i64;
    r.evidence("genera", graph.genera());
    r.evidence("edges", graph.edges());
    r.evidence("V", v);
    r.evidence("E", e);
    r.evidence("degrees", graph.degrees());
    r.evidence("genus_formula", genus_formula(graph));
    r.evidence("generic_genus", model.generic_genus());
    r.evidence("consistent", model.is_consistent());
    if graph.has_loops() {
        r.warnings.push(LOOP_WARNING.into());
    }
    let (stable, violations) = stability_check(graph);
    r.evidence("violations", &violations);
    r.check(
        "stability",
        stable,
        if stable { "every component is stable".to_string() } else { format!("{} unstable component(s)", violations.len()) },
    );
    if !stable {
        r.summary = "dual graph is not stable".into();
        return Ok(r);
    }
    let mut distinct: Vec<u32> = ms.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let top = *distinct.last().expect("nonempty");
    r.evidence("plurigenus_table", plurigenus_table(model, top).expect("stable"));
    let tests: Vec<_> = distinct.iter().map(|&m| gm_incompleteness_test(model, m).expect("stable")).collect();
    r.evidence("gm_tests", &tests);
    r.evidence("residual_quadratic", ResidualQuadratic::of(model));
    for t in &tests {
        let what = match t.verdict {
            Completeness::Incomplete => "incomplete",
            Completeness::Complete => "complete",
        };
        r.verdict(
            format!("g_m test [m={}]", t.m),
            Outcome::Info,
            format!("{what}: smooth {} vs central {}, R({}) = {}", t.smooth, t.central, t.m, t.residual),
        );
        if model.is_consistent() {
            let expect = t.m as i64 * e - (v - 1);
            r.check(format!("residual closed form [m={}]", t.m), t.residual == expect, format!("R({}) = {} = mE - (V-1) = {expect}", t.m, t.residual));
        }
    }
    let summary_head = format!("V={v}, E={e}, g={}", model.generic_genus());
    if distinct.len() >= 3 {
        let three = three_m_criterion(model, &distinct).expect("three distinct positive m");
        match &three.verdict {
            SmoothabilityVerdict::Smoothable => {
                r.check("smoothability (three values of m)", true, "R(m) = 0 for all m: one component, no nodes, g = g_0");
                r.summary = format!("{summary_head}: smoothable");
            }
            SmoothabilityVerdict::NotSmoothable { failing } => {
                let list = failing.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                r.check("smoothability (three values of m)", false, format!("R(m) != 0 at m = {list}: not smoothable"));
                r.summary = format!("{summary_head}: not smoothable (fails at m = {list})");
            }
        }
    } else {
        r.verdict("smoothability (three values of m)", Outcome::Info, "fewer than three distinct m; not decided");
        r.summary = format!("{summary_head}: g_m tests only");
    }
    if e >= 1 && model.is_consistent() {
        let zeros: Vec<u32> = (1..=10).filter(|&m| ResidualQuadratic::of(model).eval(m) == 0).collect();
        r.verdict(
            "two-value sharpening",
            Outcome::Info,
            format!("R(m) = {e}m - {} is strictly increasing; zeros in 1..=10: {zeros:?}", v - 1),
        );
    }
    Ok(r)
}

/// Per-model outcome of the exhaustive checks.
struct ModelCheck {
    residual_ok: bool,
    increasing: bool,
    counterexample: bool,
    smoothable: bool,
}

fn check_model(model: &StableModel) -> ModelCheck {
    let g = model.graph();
    let (v, e) = (g.vertex_count() as i64, g.edge_count() as i64);
    let residual = |m: u32| cover_pg_smooth(model.generic_genus(), m) - plurigenus_table(model, m).expect("stable").total;
    let rs: Vec<i64> = (1..=6).map(residual).collect();
    let residual_ok = rs.iter().zip(1..).all(|(&r, m)| r == m * e - (v - 1));
    let increasing = e == 0 || rs.windows(2).all(|w| w[0] < w[1]);
    let smoothable = rs[1] == 0 && rs[2] == 0 && rs[3] == 0;
    let counterexample = smoothable && !(v == 1 && e == 0);
    ModelCheck { residual_ok, increasing, counterexample, smoothable }
}

pub fn enumerate_report(v_max: usize, e_max: usize, g_max: u32, check_smoothability: bool) -> DiagnosticReport {
    let mut r = DiagnosticReport::new("enumerate");
    let models = enumerate_stable_models(v_max, e_max, g_max);
    let checks: Vec<ModelCheck> = models.par_iter().map(check_model).collect();
    let mut by_v: BTreeMap<String, usize> = BTreeMap::new();
    for m in &models {
        *by_v.entry(m.graph().vertex_count().to_string()).or_default() += 1;
    }
    r.evidence("bounds", json!({"vmax": v_max, "emax": e_max, "gmax": g_max}));
    r.evidence("count", models.len());
    r.evidence("count_by_vertices", by_v);
    let loops = models.iter().filter(|m| m.graph().has_loops()).count();
    r.evidence("loop_bearing", loops);
    if loops > 0 {
        r.warnings.push(LOOP_WARNING.into());
    }
    let bad: Vec<_> = models.iter().zip(&checks).filter(|(_, c)| !c.residual_ok).map(|(m, _)| m).collect();
    r.check(
        "residual closed form (m = 1..6)",
        bad.is_empty(),
        format!("{} models, {} with R(m) != mE - (V-1)", models.len(), bad.len()),
    );
    let flat = checks.iter().filter(|c| !c.increasing).count();
    r.check("residual increasing when E >= 1", flat == 0, format!("{flat} exceptions"));
    if check_smoothability {
        let counter: Vec<_> = models.iter().zip(&checks).filter(|(_, c)| c.counterexample).map(|(m, _)| m).collect();
        let smooth = checks.iter().filter(|c| c.smoothable).count();
        r.evidence("smoothable_by_three_m", smooth);
        r.evidence("counterexamples", &counter);
        r.check(
            "smoothability (m = 2, 3, 4)",
            counter.is_empty(),
            format!("R(2) = R(3) = R(4) = 0 implies V = 1 and E = 0: {} counterexamples", counter.len()),
        );
    }
    r.summary = format!("{} stable models with V <= {v_max}, E <= {e_max}, g_i <= {g_max}", models.len());
    r
}

pub fn surgery_report(d: &SurgeryDatum) -> Result<DiagnosticReport, InputError> {
    let mut r = DiagnosticReport::new("surgery");
    let s = betti_report(d).map_err(|e| InputError::Schema(e.to_string()))?;
    let (k, rho) = (d.nodes, d.relation_rank);
    r.evidence("nodes", k);
    r.evidence("relation_rank", rho);
    r.evidence("betti_X", s.betti_x);
    r.evidence("betti_Xs", s.betti_smooth);
    r.evidence("betti_X0", s.betti_nodal);
    r.evidence("euler", json!({"X": s.euler_x, "Xs": s.euler_smooth, "X0": s.euler_nodal}));
    r.evidence("vanishing_cycle_dim", s.vanishing_cycle_dim);
    r.evidence("coefficients", "Q");
    r.check(
        "euler closure",
        s.euler_smooth == s.euler_x - 2 * k && s.euler_nodal == s.euler_x - k,
        format!("chi(X) = {}, chi(X_s) = {} = chi(X) - 2k, chi(X_0) = {} = chi(X) - k", s.euler_x, s.euler_smooth, s.euler_nodal),
    );
    r.check(
        "rank identities",
        k - rho == s.betti_x[2] - s.betti_smooth[2] && rho == s.betti_smooth[3] - s.betti_nodal[3],
        format!("k - rho = {} = b2(X) - b2(X_s), rho = {} = b3(X_s) - b3(X_0)", k - rho, rho),
    );
    r.check("reconstruction", reconstruct_betti_x(&s.betti_smooth, k, rho) == s.betti_x, "X recovered from X_s, k and rho");
    let flag = friedman_smoothability_flag(d);
    r.check(
        "smoothing needs relations",
        flag,
        if flag {
            format!("rho = {rho} > 0: vanishing cycles span a {rho}-dimensional space, monodromy nontrivial")
        } else {
            "rho = 0: no relations among exceptional curves, no global smoothing".to_string()
        },
    );
    r.warnings.push(RATIONAL_RANK_WARNING.into());
    r.summary = format!(
        "k = {k} nodes, rho = {rho}: b3(X_s) = {}, b3(X_0) = {}",
        s.betti_smooth[3], s.betti_nodal[3]
    );
    Ok(r)
}

pub fn pg_report(c: &ComponentGenera) -> DiagnosticReport {
    let mut r = DiagnosticReport::new("pg");
    let sum: u64 = c.pg_components.iter().sum();
    let class = pg_equality_check(c);
    r.evidence("pg_generic", c.pg_generic);
    r.evidence("pg_components", &c.pg_components);
    r.evidence("pg_sum", sum);
    r.evidence("drop", c.pg_generic - sum);
    r.evidence("classification", class);
    let word = match class {
        Classification::FiniteDistance => "finite distance",
        Classification::InfiniteDistance => "infinite distance",
    };
    r.verdict("classification", Outcome::Info, format!("p_g {} vs sum {sum}: {word}", c.pg_generic));
    if c.pg_generic == 1 {
        let cy = cy_component_criterion(&c.pg_components);
        r.evidence("single_volume_form_component", cy.pass);
        r.verdict(
            "one component carries the volume form",
            Outcome::Info,
            if cy.pass { "exactly one component with h^(n,0) = 1" } else { "no single component with h^(n,0) = 1" },
        );
    }
    r.summary = format!("p_g = {}, components sum to {sum}: {word}", c.pg_generic);
    r
}

/// The report a fixture gets by default: `metric` for LMHS data.
pub fn fixture_report(f: &Fixture, opts: &Options) -> Result<DiagnosticReport, InputError> {
    match f {
        Fixture::Lmhs(l) => metric_report(l, opts),
        Fixture::Curve(c) => curve_report(c, opts.ms.as_deref().unwrap_or(&DEFAULT_MS)),
        Fixture::Surgery(d) => surgery_report(d),
        Fixture::Pg(c) => Ok(pg_report(c)),
    }
}
