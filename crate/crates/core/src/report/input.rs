//! Fixture ingestion. Every payload is checked against its schema before any
//! computation runs; all failures here are input errors.

use crate::curve::{DualGraph, StableModel};
use crate::exact::gaussian::gaussian_from_json;
use crate::exact::rational::rational_from_json;
use crate::exact::{ExactMatrix, GaussianRational, Rational, Subspace};
use crate::mhs::{HodgeFiltration, LimitingMixedHodge, NilpotentEndo, PolarizedLattice, WeightFiltration};
use crate::topology::{ComponentGenera, SurgeryDatum};
use serde::Deserialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("expected a fixture of kind {expected}, found {found}")]
    Kind { expected: String, found: String },
}

fn schema(msg: impl Into<String>) -> InputError {
    InputError::Schema(msg.into())
}

#[derive(Clone, Debug)]
pub struct LmhsFixture {
    pub lmhs: LimitingMixedHodge,
    pub frame: Option<Vec<Vec<GaussianRational>>>,
    pub y0: Option<Rational>,
    pub y1: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct CurveFixture {
    pub model: StableModel,
    pub generic_supplied: bool,
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Lmhs(Box<LmhsFixture>),
    Curve(CurveFixture),
    Surgery(SurgeryDatum),
    Pg(ComponentGenera),
}

impl Fixture {
    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::Lmhs(_) => "lmhs",
            Fixture::Curve(_) => "curve",
            Fixture::Surgery(_) => "surgery",
            Fixture::Pg(_) => "pg",
        }
    }
}

pub fn read_file(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io { path: path.into(), reason: e.to_string() })
}

fn vector(v: &Value, what: &str) -> Result<Vec<GaussianRational>, InputError> {
    let arr = v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))?;
    arr.iter()
        .map(|x| gaussian_from_json(x).ok_or_else(|| schema(format!("{what}: bad number {x}"))))
        .collect()
}

fn matrix(v: &Value, what: &str) -> Result<ExactMatrix, InputError> {
    let rows = v.as_array().ok_or_else(|| schema(format!("{what} must be an array of rows")))?;
    let rows: Vec<_> = rows.iter().enumerate().map(|(i, r)| vector(r, &format!("{what}[{i}]"))).collect::<Result<_, _>>()?;
    ExactMatrix::from_rows(rows).map_err(|e| schema(format!("{what}: {e}")))
}

fn span(v: &Value, dim: usize, what: &str) -> Result<Subspace, InputError> {
    let vs = v.as_array().ok_or_else(|| schema(format!("{what} must be a list of vectors")))?;
    let vs: Vec<_> = vs.iter().enumerate().map(|(i, x)| vector(x, &format!("{what}[{i}]"))).collect::<Result<_, _>>()?;
    Subspace::from_vectors(dim, &vs).map_err(|e| schema(format!("{what}: {e}")))
}

fn indexed(v: &Value, what: &str) -> Result<BTreeMap<i64, Value>, InputError> {
    let obj = v.as_object().ok_or_else(|| schema(format!("{what} must map indices to spanning vectors")))?;
    obj.iter()
        .map(|(k, x)| {
            k.parse::<i64>().map(|k| (k, x.clone())).map_err(|_| schema(format!("{what}: index {k:?} is not an integer")))
        })
        .collect()
}

fn check_keys(obj: &serde_json::Map<String, Value>, allowed: &[&str]) -> Result<(), InputError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(format!("unknown field {k:?}"))),
        None => Ok(()),
    }
}

fn lmhs(obj: &serde_json::Map<String, Value>) -> Result<LmhsFixture, InputError> {
    check_keys(obj, &["kind", "weight", "Q", "N", "F", "W", "frame", "y0", "Y", "description"])?;
    let weight = obj.get("weight").and_then(Value::as_u64).ok_or_else(|| schema("weight must be a nonnegative integer"))?;
    let weight = u32::try_from(weight).map_err(|_| schema("weight too large"))?;
    let q = matrix(obj.get("Q").ok_or_else(|| schema("missing Q"))?, "Q")?;
    let n = matrix(obj.get("N").ok_or_else(|| schema("missing N"))?, "N")?;
    let lattice = PolarizedLattice::new(weight, q).map_err(|e| schema(e.to_string()))?;
    let endo = NilpotentEndo::new(lattice, n).map_err(|e| schema(e.to_string()))?;
    let dim = endo.dim();

    let given = indexed(obj.get("F").ok_or_else(|| schema("missing F"))?, "F")?;
    if let Some((&p, _)) = given.iter().find(|(&p, _)| p < 0 || p > weight as i64) {
        return Err(schema(format!("F^{p} is outside 0..={weight}")));
    }
    let mut steps = Vec::new();
    for p in 0..=weight as i64 {
        steps.push(match given.get(&p) {
            Some(v) => span(v, dim, &format!("F^{p}"))?,
            None if p == 0 => Subspace::full(dim),
            None => return Err(schema(format!("missing F^{p}"))),
        });
    }
    let f = HodgeFiltration::new(steps).map_err(|e| schema(e.to_string()))?;

    let w = match obj.get("W") {
        None => None,
        Some(v) => {
            let given = indexed(v, "W")?;
            let (&low, _) = given.iter().next().ok_or_else(|| schema("W has no steps"))?;
            let (&high, _) = given.iter().next_back().expect("nonempty");
            let mut steps = Vec::new();
            let mut current = Subspace::zero(dim);
            for k in low..=high {
                if let Some(v) = given.get(&k) {
                    current = span(v, dim, &format!("W_{k}"))?;
                }
                steps.push(current.clone());
            }
            Some(WeightFiltration::candidate(weight as i64, low, steps).map_err(|e| schema(e.to_string()))?)
        }
    };
    let lmhs = LimitingMixedHodge::new(endo, f, w).map_err(|e| schema(e.to_string()))?;

    let frame = match obj.get("frame") {
        None => None,
        Some(v) => {
            let vs = v.as_array().ok_or_else(|| schema("frame must be a list of vectors"))?;
            Some(vs.iter().enumerate().map(|(i, x)| vector(x, &format!("frame[{i}]"))).collect::<Result<Vec<_>, _>>()?)
        }
    };
    let bound = |key: &str| -> Result<Option<Rational>, InputError> {
        obj.get(key)
            .map(|v| rational_from_json(v).ok_or_else(|| schema(format!("{key} must be a rational"))))
            .transpose()
    };
    Ok(LmhsFixture { lmhs, frame, y0: bound("y0")?, y1: bound("Y")? })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    genus: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    #[allow(dead_code)]
    kind: Option<String>,
    #[allow(dead_code)]
    description: Option<String>,
    vertices: Vec<VertexDoc>,
    edges: Vec<(usize, usize)>,
    generic_genus: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurgeryDoc {
    #[allow(dead_code)]
    kind: Option<String>,
    #[allow(dead_code)]
    description: Option<String>,
    #[serde(rename = "betti_X")]
    betti_x: Vec<i64>,
    nodes: i64,
    relation_rank: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PgDoc {
    #[allow(dead_code)]
    kind: Option<String>,
    #[allow(dead_code)]
    description: Option<String>,
    pg_generic: u64,
    pg_components: Vec<u64>,
}

fn typed<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, InputError> {
    serde_json::from_value(v).map_err(|e| schema(e.to_string()))
}

pub fn curve_model(genera: Vec<u32>, edges: Vec<(usize, usize)>, generic: Option<i64>) -> Result<StableModel, InputError> {
    let graph = DualGraph::new(genera, edges).map_err(|e| schema(e.to_string()))?;
    StableModel::new(graph, generic).map_err(|e| schema(e.to_string()))
}

/// Parses a self-describing fixture; a missing `kind` is inferred from the fields.
pub fn parse_fixture(text: &str) -> Result<Fixture, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| schema("fixture must be a JSON object"))?;
    let kind = match obj.get("kind") {
        Some(Value::String(k)) => k.clone(),
        Some(_) => return Err(schema("kind must be a string")),
        None if obj.contains_key("Q") => "lmhs".into(),
        None if obj.contains_key("vertices") => "curve".into(),
        None if obj.contains_key("betti_X") => "surgery".into(),
        None if obj.contains_key("pg_generic") => "pg".into(),
        None => return Err(schema("cannot tell the fixture kind")),
    };
    match kind.as_str() {
        "lmhs" | "metric" => Ok(Fixture::Lmhs(Box::new(lmhs(obj)?))),
        "curve" => {
            let doc: CurveDoc = typed(v)?;
            let supplied = doc.generic_genus.is_some();
            let model = curve_model(doc.vertices.iter().map(|x| x.genus).collect(), doc.edges, doc.generic_genus)?;
            Ok(Fixture::Curve(CurveFixture { model, generic_supplied: supplied }))
        }
        "surgery" => {
            let doc: SurgeryDoc = typed(v)?;
            SurgeryDatum::new(&doc.betti_x, doc.nodes, doc.relation_rank).map(Fixture::Surgery).map_err(|e| schema(e.to_string()))
        }
        "pg" => {
            let doc: PgDoc = typed(v)?;
            ComponentGenera::new(doc.pg_generic, doc.pg_components).map(Fixture::Pg).map_err(|e| schema(e.to_string()))
        }
        other => Err(schema(format!("unknown fixture kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::bundled::BUNDLED;

    #[test]
    fn bundled_fixtures_parse() {
        for b in BUNDLED {
            parse_fixture(b.source).unwrap_or_else(|e| panic!("{}: {e}", b.name));
        }
    }

    #[test]
    fn rejects_wrong_symmetry() {
        let bad = r#"{"kind":"lmhs","weight":1,"Q":[[0,1],[1,0]],"N":[[0,0],[0,0]],"F":{"1":[[1,0]]}}"#;
        assert!(matches!(parse_fixture(bad), Err(InputError::Schema(_))));
        assert!(matches!(parse_fixture("{"), Err(InputError::Json(_))));
        let extra = r#"{"kind":"pg","pg_generic":1,"pg_components":[1],"bogus":2}"#;
        assert!(matches!(parse_fixture(extra), Err(InputError::Schema(_))));
    }

    #[test]
    fn candidate_w_is_kept() {
        let doc = r#"{"kind":"lmhs","weight":1,"Q":[[0,1],[-1,0]],"N":[[0,-1],[0,0]],
            "F":{"1":[[0,1]]},"W":{"0":[[1,0]],"1":[[1,0],[0,1]]}}"#;
        let Fixture::Lmhs(f) = parse_fixture(doc).unwrap() else { panic!() };
        assert_eq!(f.lmhs.w().range(), (0, 1));
    }
}
