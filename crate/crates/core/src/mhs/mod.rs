//! Limiting mixed Hodge structures: the monodromy weight filtration and the
//! axioms a limiting Hodge filtration must satisfy against it.

pub mod graded;
pub mod hodge;
pub mod lattice;
pub mod weight;

pub use hodge::{
    check_n_type, hermitian_positive, induced_pure_check, primitive_polarization_check, validate_lmhs, Axiom,
    HodgeFiltration, LimitingMixedHodge, PolarizationOutcome, ValidationReport,
};
pub use lattice::{NilpotentEndo, PolarizedLattice};
pub use weight::{check_graded_isomorphisms, weight_filtration, weight_filtration_of, GradedIsoCheck, WeightFiltration};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MhsError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("{0} must have rational entries")]
    NotRational(&'static str),
    #[error("Q must satisfy Q^T = (-1)^n Q for weight n = {weight}")]
    WrongSymmetry { weight: u32 },
    #[error("Q is degenerate")]
    Degenerate,
    #[error("N is not nilpotent")]
    NotNilpotent,
    #[error("N is not an infinitesimal isometry of Q (N^T Q + Q N != 0)")]
    NotIsometry,
    #[error("filtration has no steps")]
    EmptyFiltration,
    #[error("weight filtration is not increasing at index {index}")]
    NotIncreasing { index: i64 },
    #[error("weight filtration does not end at V")]
    NotExhaustive,
    #[error("Hodge filtration must start with F^0 = V")]
    HodgeNotExhaustive,
    #[error("Hodge filtration is not decreasing at F^{index}")]
    HodgeNotDecreasing { index: usize },
    #[error("induced Hodge structure on Gr_{weight} is not pure")]
    NotPure { weight: i64 },
}
