//! Geometric-genus bookkeeping for semi-stable central fibres, and the Betti
//! arithmetic of smoothing a nodal Calabi–Yau threefold.
//!
//! All Betti numbers are ranks over ℚ; torsion is ignored.

use crate::metric::Classification;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("components carry p_g = {sum} in total, more than the generic {generic}")]
    ExceedsGeneric { generic: u64, sum: u64 },
    #[error("expected 7 Betti numbers b_0..b_6, got {0}")]
    BettiLength(usize),
    #[error("b_{index} = {found}, expected {expected}")]
    BettiShape { index: usize, expected: String, found: i64 },
    #[error("need at least one node")]
    NoNodes,
    #[error("relation rank {rho} outside 0..={k}")]
    RankOutOfRange { rho: i64, k: i64 },
    #[error("b_2(X) = {b2} is smaller than k - rho = {needed}")]
    TooFewClasses { b2: i64, needed: i64 },
    #[error("derived Betti number {name} = {value} is negative")]
    NegativeBetti { name: String, value: i64 },
}

/// `p_g` of the generic fibre against the components of the central fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGenera {
    pub pg_generic: u64,
    pub pg_components: Vec<u64>,
}

impl ComponentGenera {
    pub fn new(pg_generic: u64, pg_components: Vec<u64>) -> Result<Self, TopologyError> {
        let sum: u64 = pg_components.iter().sum();
        if sum > pg_generic {
            return Err(TopologyError::ExceedsGeneric { generic: pg_generic, sum });
        }
        Ok(Self { pg_generic, pg_components })
    }
}

/// Finite distance exactly when no holomorphic top form is lost.
pub fn pg_equality_check(data: &ComponentGenera) -> Classification {
    if data.pg_generic == data.pg_components.iter().sum::<u64>() {
        Classification::FiniteDistance
    } else {
        Classification::InfiniteDistance
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyCriterion {
    pub pass: bool,
    /// Several components with `h^{n,0} ≠ 0`: incompatible with a one-dimensional `H^{n,0}`.
    pub contradicts_bound: bool,
}

/// Exactly one component carries a holomorphic volume form, and it is unique.
pub fn cy_component_criterion(h_n0: &[u64]) -> CyCriterion {
    let nonzero: Vec<_> = h_n0.iter().filter(|&&h| h != 0).collect();
    let sum: u64 = h_n0.iter().sum();
    CyCriterion { pass: nonzero.len() == 1 && *nonzero[0] == 1, contradicts_bound: sum > 1 }
}

/// A small resolution `X` of a nodal threefold with `k` nodes, and the rank
/// `ρ` of relations among the exceptional curve classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryDatum {
    pub betti_x: [i64; 7],
    pub nodes: i64,
    pub relation_rank: i64,
}

impl SurgeryDatum {
    pub fn new(betti: &[i64], nodes: i64, relation_rank: i64) -> Result<Self, TopologyError> {
        let betti_x: [i64; 7] = betti.try_into().map_err(|_| TopologyError::BettiLength(betti.len()))?;
        for (index, expected) in [(0, 1), (1, 0), (5, 0), (6, 1)] {
            if betti_x[index] != expected {
                return Err(TopologyError::BettiShape { index, expected: expected.to_string(), found: betti_x[index] });
            }
        }
        if betti_x[4] != betti_x[2] {
            return Err(TopologyError::BettiShape { index: 4, expected: "b_2".into(), found: betti_x[4] });
        }
        if let Some(index) = [2, 3].into_iter().find(|&i| betti_x[i] < 0) {
            return Err(TopologyError::BettiShape { index, expected: ">= 0".into(), found: betti_x[index] });
        }
        if nodes < 1 {
            return Err(TopologyError::NoNodes);
        }
        if !(0..=nodes).contains(&relation_rank) {
            return Err(TopologyError::RankOutOfRange { rho: relation_rank, k: nodes });
        }
        if betti_x[2] < nodes - relation_rank {
            return Err(TopologyError::TooFewClasses { b2: betti_x[2], needed: nodes - relation_rank });
        }
        Ok(Self { betti_x, nodes, relation_rank })
    }
}

pub fn euler(betti: &[i64; 7]) -> i64 {
    betti.iter().enumerate().map(|(i, b)| if i % 2 == 0 { *b } else { -*b }).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryReport {
    pub betti_x: [i64; 7],
    pub betti_smooth: [i64; 7],
    pub betti_nodal: [i64; 7],
    pub euler_x: i64,
    pub euler_smooth: i64,
    pub euler_nodal: i64,
    pub vanishing_cycle_dim: i64,
    /// `ρ > 0`: the vanishing cycles span a nonzero space, so monodromy can be nontrivial.
    pub monodromy_nontrivial: bool,
}

/// Betti numbers of the smoothing `X_s` and of the nodal fibre `X_0`.
pub fn surgery_report(datum: &SurgeryDatum) -> Result<SurgeryReport, TopologyError> {
    let b = datum.betti_x;
    let (k, rho) = (datum.nodes, datum.relation_rank);
    let b2s = b[2] - (k - rho);
    let b3s = b[3] + 2 * rho;
    let smooth = [1, 0, b2s, b3s, b2s, 0, 1];
    let nodal = [1, 0, b2s, b3s - rho, b[4], 0, 1];
    for (name, value) in [("b_2(X_s)", b2s), ("b_3(X_s)", b3s), ("b_3(X_0)", b3s - rho)] {
        if value < 0 {
            return Err(TopologyError::NegativeBetti { name: name.into(), value });
        }
    }
    let report = SurgeryReport {
        betti_x: b,
        betti_smooth: smooth,
        betti_nodal: nodal,
        euler_x: euler(&b),
        euler_smooth: euler(&smooth),
        euler_nodal: euler(&nodal),
        vanishing_cycle_dim: rho,
        monodromy_nontrivial: rho > 0,
    };
    debug_assert_eq!(report.euler_smooth, report.euler_x - 2 * k);
    debug_assert_eq!(report.euler_nodal, report.euler_x - k);
    Ok(report)
}

/// A global smoothing needs at least one relation among the exceptional curves.
pub fn friedman_smoothability_flag(datum: &SurgeryDatum) -> bool {
    datum.relation_rank > 0
}

/// Recovers the Betti numbers of `X` from those of `X_s` and `(k, ρ)`.
pub fn reconstruct_betti_x(smooth: &[i64; 7], nodes: i64, relation_rank: i64) -> [i64; 7] {
    let b2 = smooth[2] + nodes - relation_rank;
    [1, 0, b2, smooth[3] - 2 * relation_rank, b2, 0, 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg_examples() {
        let c = |g, v: &[u64]| pg_equality_check(&ComponentGenera::new(g, v.to_vec()).unwrap());
        assert_eq!(c(3, &[1, 1, 1]), Classification::FiniteDistance);
        assert_eq!(c(3, &[2, 0]), Classification::InfiniteDistance);
        assert_eq!(c(1, &[1, 0, 0]), Classification::FiniteDistance);
        assert_eq!(ComponentGenera::new(1, vec![1, 1]), Err(TopologyError::ExceedsGeneric { generic: 1, sum: 2 }));
    }

    #[test]
    fn cy_examples() {
        assert!(cy_component_criterion(&[1, 0, 0]).pass);
        assert!(!cy_component_criterion(&[0, 0]).pass);
        let both = cy_component_criterion(&[1, 1]);
        assert!(!both.pass && both.contradicts_bound);
    }

    #[test]
    fn surgery_examples() {
        let d = SurgeryDatum::new(&[1, 0, 1, 202, 1, 0, 1], 1, 1).unwrap();
        let r = surgery_report(&d).unwrap();
        assert_eq!((r.betti_smooth[2], r.betti_smooth[3], r.betti_nodal[3]), (1, 204, 203));
        assert_eq!(r.euler_smooth, r.euler_x - 2);
        assert!(friedman_smoothability_flag(&d));

        let d = SurgeryDatum::new(&[1, 0, 5, 10, 5, 0, 1], 3, 1).unwrap();
        let r = surgery_report(&d).unwrap();
        assert_eq!((r.betti_smooth[2], r.betti_smooth[3], r.betti_nodal[3]), (3, 12, 11));
        assert_eq!(reconstruct_betti_x(&r.betti_smooth, 3, 1), d.betti_x);

        assert_eq!(SurgeryDatum::new(&[1, 0, 1, 2, 1, 0, 1], 0, 0), Err(TopologyError::NoNodes));
        let flat = SurgeryDatum::new(&[1, 0, 5, 10, 5, 0, 1], 2, 0).unwrap();
        assert!(!friedman_smoothability_flag(&flat));
    }
}
