//! Stable curves through their dual graphs, and the pluri-genus bookkeeping of
//! cyclic covers branched along a smooth divisor.
//!
//! `d_i` counts node branches on component `i`; a self-node contributes 2.

pub mod enumerate;

pub use enumerate::enumerate_stable_models;

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("graph has no vertices")]
    Empty,
    #[error("edge {index} refers to vertex {vertex}, but there are only {count}")]
    BadEdge { index: usize, vertex: usize, count: usize },
    #[error("dual graph is disconnected")]
    Disconnected,
    #[error("unstable vertex {vertex}: genus {genus} with {degree} branches")]
    Unstable { vertex: usize, genus: u32, degree: u32 },
    #[error("generic genus must be at least 2, got {0}")]
    GenusTooSmall(i64),
    #[error("need at least 3 distinct positive values of m, got {0:?}")]
    TooFewM(Vec<u32>),
    #[error("m must be positive")]
    ZeroM,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualGraph {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    /// Edges are stored with `i ≤ j` and sorted.
    pub fn new(genera: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self, CurveError> {
        if genera.is_empty() {
            return Err(CurveError::Empty);
        }
        let count = genera.len();
        for (index, &(a, b)) in edges.iter().enumerate() {
            if let Some(&vertex) = [a, b].iter().find(|&&v| v >= count) {
                return Err(CurveError::BadEdge { index, vertex, count });
            }
        }
        let mut edges: Vec<_> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        let g = Self { genera, edges };
        if !g.is_connected() {
            return Err(CurveError::Disconnected);
        }
        Ok(g)
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.genera.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    fn is_connected(&self) -> bool {
        let n = self.genera.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let other = if a == v { b } else if b == v { a } else { continue };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Arithmetic genus `Σ g_i + E - V + 1`.
pub fn genus_formula(graph: &DualGraph) -> i64 {
    let sum: i64 = graph.genera.iter().map(|&g| g as i64).sum();
    sum + graph.edge_count() as i64 - graph.vertex_count() as i64 + 1
}

/// A dual graph together with the genus of the nearby smooth fibre.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StableModel {
    graph: DualGraph,
    generic_genus: i64,
}

impl StableModel {
    /// `generic_genus = None` takes the arithmetic genus of the graph.
    pub fn new(graph: DualGraph, generic_genus: Option<i64>) -> Result<Self, CurveError> {
        let g = generic_genus.unwrap_or_else(|| genus_formula(&graph));
        if g < 2 {
            return Err(CurveError::GenusTooSmall(g));
        }
        Ok(Self { graph, generic_genus: g })
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn generic_genus(&self) -> i64 {
        self.generic_genus
    }

    pub fn is_consistent(&self) -> bool {
        genus_formula(&self.graph) == self.generic_genus
    }
}

pub fn vertex_is_stable(genus: u32, degree: u32) -> bool {
    match genus {
        0 => degree >= 3,
        1 => degree >= 1,
        _ => true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: usize,
    pub genus: u32,
    pub degree: u32,
}

pub fn stability_check(graph: &DualGraph) -> (bool, Vec<Violation>) {
    let v: Vec<_> = graph
        .genera
        .iter()
        .zip(graph.degrees())
        .enumerate()
        .filter(|(_, (&g, d))| !vertex_is_stable(g, *d))
        .map(|(vertex, (&genus, degree))| Violation { vertex, genus, degree })
        .collect();
    (v.is_empty(), v)
}

fn require_stable(graph: &DualGraph) -> Result<(), CurveError> {
    match stability_check(graph).1.first() {
        Some(v) => Err(CurveError::Unstable { vertex: v.vertex, genus: v.genus, degree: v.degree }),
        None => Ok(()),
    }
}

/// `h^0(K̃^k)` on a component of genus `g` with `d` node branches.
pub fn twisted_plurigenus(g: u32, d: u32, k: u32) -> Result<i64, CurveError> {
    if !vertex_is_stable(g, d) {
        return Err(CurveError::Unstable { vertex: 0, genus: g, degree: d });
    }
    if k == 0 {
        return Err(CurveError::ZeroM);
    }
    let (g, d, k) = (g as i64, d as i64, k as i64);
    Ok(if k == 1 { g } else { (2 * k - 1) * (g - 1) + (k - 1) * d })
}

/// `p_g` of the `m`-cyclic cover over a smooth genus-`g` fibre: `m²(g-1) + 1`.
pub fn cover_pg_smooth(g: i64, m: u32) -> i64 {
    let m = m as i64;
    m * m * (g - 1) + 1
}

/// Pluri-genus table of the central fibre: one row per component, one column per `k ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluriGenusTable {
    pub rows: Vec<Vec<i64>>,
    pub row_sums: Vec<i64>,
    pub total: i64,
}

pub fn plurigenus_table(model: &StableModel, m: u32) -> Result<PluriGenusTable, CurveError> {
    if m == 0 {
        return Err(CurveError::ZeroM);
    }
    require_stable(&model.graph)?;
    let rows: Vec<Vec<i64>> = model
        .graph
        .genera
        .iter()
        .zip(model.graph.degrees())
        .map(|(&g, d)| (1..=m).map(|k| twisted_plurigenus(g, d, k)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let row_sums: Vec<i64> = rows.iter().map(|r| r.iter().sum()).collect();
    let total = row_sums.iter().sum();
    Ok(PluriGenusTable { rows, row_sums, total })
}

/// Closed form `Σ_i (m²(g_i-1) + 1) + m(m-1)/2 · Σ_i d_i`.
pub fn cover_pg_central(model: &StableModel, m: u32) -> Result<i64, CurveError> {
    require_stable(&model.graph)?;
    let mi = m as i64;
    let base: i64 = model.graph.genera.iter().map(|&g| mi * mi * (g as i64 - 1) + 1).sum();
    let branches: i64 = model.graph.degrees().iter().map(|&d| d as i64).sum();
    Ok(base + mi * (mi - 1) / 2 * branches)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Completeness {
    Incomplete,
    Complete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmTest {
    pub m: u32,
    pub smooth: i64,
    pub central: i64,
    pub residual: i64,
    pub verdict: Completeness,
}

/// Compares the cover's `p_g` over the smooth and the central fibre.
pub fn gm_incompleteness_test(model: &StableModel, m: u32) -> Result<GmTest, CurveError> {
    if m == 0 {
        return Err(CurveError::ZeroM);
    }
    let smooth = cover_pg_smooth(model.generic_genus, m);
    let central = cover_pg_central(model, m)?;
    let residual = smooth - central;
    let verdict = if residual == 0 { Completeness::Incomplete } else { Completeness::Complete };
    Ok(GmTest { m, smooth, central, residual, verdict })
}

/// `R(m) = a m² + b m + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualQuadratic {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ResidualQuadratic {
    pub fn of(model: &StableModel) -> Self {
        let g = &model.graph;
        let v = g.vertex_count() as i64;
        let sum_g: i64 = g.genera.iter().map(|&x| x as i64).sum();
        let e = g.edge_count() as i64;
        // smooth: m²(g-1)+1; central: m²(Σg_i - V) + V + (m² - m)/2 Σd_i, and Σd_i = 2E
        Self { a: model.generic_genus - 1 - sum_g + v - e, b: e, c: 1 - v }
    }

    pub fn eval(&self, m: u32) -> i64 {
        let m = m as i64;
        self.a * m * m + self.b * m + self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmoothabilityVerdict {
    /// Every supplied `m` gives equality: one component, no nodes, `g = g_0`.
    Smoothable,
    NotSmoothable { failing: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeMReport {
    pub tests: Vec<GmTest>,
    pub quadratic: ResidualQuadratic,
    pub verdict: SmoothabilityVerdict,
}

pub fn three_m_criterion(model: &StableModel, ms: &[u32]) -> Result<ThreeMReport, CurveError> {
    let distinct: BTreeSet<u32> = ms.iter().copied().collect();
    if distinct.contains(&0) {
        return Err(CurveError::ZeroM);
    }
    if distinct.len() < 3 {
        return Err(CurveError::TooFewM(ms.to_vec()));
    }
    let tests: Vec<GmTest> = distinct.iter().map(|&m| gm_incompleteness_test(model, m)).collect::<Result<_, _>>()?;
    let failing: Vec<u32> = tests.iter().filter(|t| t.residual != 0).map(|t| t.m).collect();
    let quadratic = ResidualQuadratic::of(model);
    let verdict = if failing.is_empty() {
        // a quadratic with three roots vanishes identically
        debug_assert!(quadratic.is_zero());
        SmoothabilityVerdict::Smoothable
    } else {
        SmoothabilityVerdict::NotSmoothable { failing }
    };
    Ok(ThreeMReport { tests, quadratic, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(genera: &[u32], edges: &[(usize, usize)]) -> StableModel {
        StableModel::new(DualGraph::new(genera.to_vec(), edges.to_vec()).unwrap(), None).unwrap()
    }

    #[test]
    fn stability_examples() {
        assert!(stability_check(&DualGraph::new(vec![3], vec![]).unwrap()).0);
        let (ok, v) = stability_check(&DualGraph::new(vec![0, 2], vec![(0, 1)]).unwrap());
        assert!(!ok);
        assert_eq!(v, vec![Violation { vertex: 0, genus: 0, degree: 1 }]);
        assert!(stability_check(&DualGraph::new(vec![0, 1], vec![(0, 1); 3]).unwrap()).0);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_formula(&DualGraph::new(vec![3], vec![]).unwrap()), 3);
        assert_eq!(genus_formula(&DualGraph::new(vec![1, 1], vec![(0, 1), (0, 1)]).unwrap()), 3);
        assert_eq!(genus_formula(&DualGraph::new(vec![2, 1], vec![(0, 1)]).unwrap()), 3);
        assert_eq!(DualGraph::new(vec![2, 2], vec![]), Err(CurveError::Disconnected));
    }

    #[test]
    fn plurigenus_examples() {
        assert_eq!(twisted_plurigenus(2, 1, 3), Ok(7));
        assert_eq!(twisted_plurigenus(0, 3, 2), Ok(0));
        assert_eq!(twisted_plurigenus(1, 1, 1), Ok(1));
        assert!(twisted_plurigenus(0, 2, 2).is_err());
        assert_eq!(cover_pg_smooth(2, 1), 2);
        assert_eq!(cover_pg_smooth(2, 2), 5);
        assert_eq!(cover_pg_smooth(3, 3), 19);
    }

    #[test]
    fn central_examples() {
        assert_eq!(cover_pg_central(&model(&[3], &[]), 2), Ok(9));
        assert_eq!(cover_pg_central(&model(&[1, 1], &[(0, 1), (0, 1)]), 2), Ok(6));
        let tree = model(&[2, 1], &[(0, 1)]);
        assert_eq!(cover_pg_central(&tree, 2), Ok(8));
        assert_eq!(plurigenus_table(&tree, 2).unwrap().total, 8);
    }

    #[test]
    fn gm_examples() {
        let t = gm_incompleteness_test(&model(&[1, 1], &[(0, 1), (0, 1)]), 1).unwrap();
        assert_eq!((t.verdict, t.residual), (Completeness::Complete, 1));
        let tree = model(&[2, 1], &[(0, 1)]);
        assert_eq!(gm_incompleteness_test(&tree, 1).unwrap().verdict, Completeness::Incomplete);
        let t2 = gm_incompleteness_test(&tree, 2).unwrap();
        assert_eq!((t2.smooth, t2.central, t2.verdict), (9, 8, Completeness::Complete));
    }

    #[test]
    fn three_m_examples() {
        let r = three_m_criterion(&model(&[3], &[]), &[2, 3, 4]).unwrap();
        assert_eq!(r.verdict, SmoothabilityVerdict::Smoothable);
        let r = three_m_criterion(&model(&[2, 1], &[(0, 1)]), &[1, 2, 3]).unwrap();
        assert_eq!(r.verdict, SmoothabilityVerdict::NotSmoothable { failing: vec![2, 3] });
        let path = model(&[1, 1, 1], &[(0, 1), (1, 2)]);
        assert_eq!(ResidualQuadratic::of(&path).eval(5), 5 * 2 - 2);
        let r = three_m_criterion(&path, &[1, 2, 3]).unwrap();
        assert_eq!(r.verdict, SmoothabilityVerdict::NotSmoothable { failing: vec![2, 3] });
        assert_eq!(three_m_criterion(&path, &[2, 2, 3]), Err(CurveError::TooFewM(vec![2, 2, 3])));
    }
}
