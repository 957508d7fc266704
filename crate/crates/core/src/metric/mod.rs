//! Asymptotics of the Hodge metric along a one-parameter degeneration.
//!
//! Only the nilpotent-orbit part of the period map is used: the frame
//! `a^1, …, a^{p_g}` of `F^n` is moved by `e^{2iyN}` and paired with its
//! conjugate. The determinant `p(y)` of that Gram matrix decides finite versus
//! infinite distance through its degree.

pub mod quadrature;

use crate::exact::poly::{count_real_roots, Limit};
use crate::exact::rational::{from_f64, to_f64};
use crate::exact::{nilpotent_exp, poly_det, ExactError, ExactMatrix, GaussianRational, Poly, PolyMatrix, Rational, RationalFunction, Subspace};
use crate::mhs::LimitingMixedHodge;
use num_traits::{Signed, Zero};
use quadrature::integrate;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("frame vector {index} has length {found}, expected {expected}")]
    FrameShape { index: usize, expected: usize, found: usize },
    #[error("frame vectors are linearly dependent")]
    FrameDependent,
    #[error("frame does not span F^n (spans {spanned} of {pg} dimensions inside it)")]
    FrameNotSpanning { spanned: usize, pg: usize },
    #[error("p(y) has non-real coefficients")]
    NotReal,
    #[error("leading coefficient of p(y) is not positive")]
    NonPositiveLeading,
    #[error("p(y) is identically zero")]
    ZeroPolynomial,
    #[error("deg p = {degree} but N F^n = 0 is {annihilated}")]
    DegreeCriterionMismatch { degree: usize, annihilated: bool },
    #[error("need 0 < y0 < Y")]
    BadInterval,
    #[error("p(y) has {count} root(s) in [y0, Y]")]
    RootInInterval { count: usize },
    #[error("p(y) is not positive on [y0, Y]")]
    NotPositiveOnInterval,
    #[error("metric density is negative at y = {at}")]
    NegativeDensity { at: f64 },
    #[error("quadrature error bound {bound:e} exceeds tolerance {tolerance:e}")]
    QuadratureFailed { bound: f64, tolerance: f64 },
    #[error("degree 0: no Poincare regime")]
    NoPoincareRegime,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Vectors spanning `F^n` of a limiting mixed Hodge structure.
#[derive(Clone, Debug)]
pub struct PeriodFrame {
    lmhs: LimitingMixedHodge,
    vectors: Vec<Vec<GaussianRational>>,
}

impl PeriodFrame {
    pub fn new(lmhs: LimitingMixedHodge, vectors: Vec<Vec<GaussianRational>>) -> Result<Self, MetricError> {
        let dim = lmhs.dim();
        if let Some((index, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(MetricError::FrameShape { index, expected: dim, found: v.len() });
        }
        let span = Subspace::from_vectors(dim, &vectors)?;
        if span.dim() != vectors.len() {
            return Err(MetricError::FrameDependent);
        }
        let top = lmhs.f().step(lmhs.weight());
        if span != top {
            let spanned = span.intersection(&top).dim();
            return Err(MetricError::FrameNotSpanning { spanned, pg: top.dim() });
        }
        Ok(Self { lmhs, vectors })
    }

    /// The echelon basis of `F^n`.
    pub fn standard(lmhs: LimitingMixedHodge) -> Self {
        let vectors = lmhs.f().step(lmhs.weight()).basis_vectors();
        Self { lmhs, vectors }
    }

    pub fn lmhs(&self) -> &LimitingMixedHodge {
        &self.lmhs
    }

    pub fn vectors(&self) -> &[Vec<GaussianRational>] {
        &self.vectors
    }

    pub fn pg(&self) -> usize {
        self.vectors.len()
    }

    /// `dim × p_g`, one frame vector per column.
    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.lmhs.dim(), &self.vectors).expect("validated lengths")
    }

    /// The frame `a'_j = Σ_i a_i g_{ij}`; `g` must be invertible.
    pub fn recombined(&self, g: &ExactMatrix) -> Result<Self, MetricError> {
        let m = self.matrix().try_mul(g)?;
        Self::new(self.lmhs.clone(), m.columns())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Classification {
    FiniteDistance,
    InfiniteDistance,
}

/// `√d / 2`, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PoincareCoefficient {
    pub d: usize,
    pub expr: String,
}

impl PoincareCoefficient {
    pub fn new(d: usize) -> Self {
        Self { d, expr: format!("sqrt({d})/2") }
    }

    pub fn value(&self) -> f64 {
        (self.d as f64).sqrt() / 2.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticProfile {
    pub p: Poly,
    pub d: usize,
    pub classification: Classification,
    pub poincare_coefficient: PoincareCoefficient,
    pub nf_annihilated: bool,
}

/// `M_ij(y) = i^n Q(e^{2iyN} a^i, conj a^j)`.
pub fn hodge_norm_matrix(frame: &PeriodFrame) -> Result<PolyMatrix, MetricError> {
    let lmhs = frame.lmhs();
    let a = frame.matrix();
    let q = lmhs.endo().lattice().q();
    let exp = nilpotent_exp(lmhs.endo().n(), &GaussianRational::new(Rational::zero(), Rational::from_integer(2.into())))?;
    let moved = exp.mul_const(&a)?;
    let right = q.try_mul(&a.conj())?;
    Ok(moved.transpose().mul_const(&right)?.scale(&GaussianRational::i_pow(lmhs.weight())))
}

/// `N a = 0` for every frame vector.
pub fn nf_annihilation(frame: &PeriodFrame) -> bool {
    let n = frame.lmhs().endo().n();
    frame.vectors().iter().all(|v| n.mul_vec(v).iter().all(Zero::is_zero))
}

pub fn asymptotic_profile(frame: &PeriodFrame) -> Result<AsymptoticProfile, MetricError> {
    let p = poly_det(&hodge_norm_matrix(frame)?)?;
    if !p.is_real() {
        return Err(MetricError::NotReal);
    }
    let d = p.degree().ok_or(MetricError::ZeroPolynomial)?;
    if !p.leading().re.is_positive() {
        return Err(MetricError::NonPositiveLeading);
    }
    let annihilated = nf_annihilation(frame);
    if (d == 0) != annihilated {
        return Err(MetricError::DegreeCriterionMismatch { degree: d, annihilated });
    }
    let classification = if d == 0 { Classification::FiniteDistance } else { Classification::InfiniteDistance };
    Ok(AsymptoticProfile { p, d, classification, poincare_coefficient: PoincareCoefficient::new(d), nf_annihilated: annihilated })
}

/// Level multiplicities `q_ℓ = dim(F^n ∩ W_{n+ℓ}) - dim(F^n ∩ W_{n+ℓ-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedDegree {
    pub levels: Vec<(i64, usize)>,
    pub degree: i64,
}

/// Degree predicted by an adapted frame: each block of `q` frame vectors whose
/// classes first appear in `W_{n+ℓ}` contributes `q·ℓ`.
pub fn adapted_degree(frame: &PeriodFrame) -> AdaptedDegree {
    let lmhs = frame.lmhs();
    let n = lmhs.weight();
    let span = Subspace::from_vectors(lmhs.dim(), frame.vectors()).expect("validated lengths");
    let (low, high) = lmhs.w().range();
    let mut levels = Vec::new();
    let mut prev = 0;
    for k in low..=high {
        let here = span.intersection(&lmhs.w().step(k)).dim();
        if here > prev {
            levels.push((k - n, here - prev));
        }
        prev = here;
    }
    let degree = levels.iter().map(|&(l, q)| l * q as i64).sum();
    AdaptedDegree { levels, degree }
}

/// `G = (p'^2 - p p'') / (4 p^2)`.
pub fn metric_density(p: &Poly) -> Result<RationalFunction, MetricError> {
    if p.is_zero() {
        return Err(MetricError::ZeroPolynomial);
    }
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let num = &(&d1 * &d1) - &(p * &d2);
    let den = (p * p).scale(&GaussianRational::from_int(4));
    Ok(RationalFunction::new(num, den).expect("p is nonzero"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LengthEstimate {
    pub value: f64,
    pub error_bound: f64,
}

const LENGTH_RTOL: f64 = 1e-9;

/// `∫_{y0}^{Y} √G(y) dy` along a vertical line.
///
/// Integrated in `t = ln y`, where the integrand `y √G` tends to `√d / 2`.
/// Each node is converted to an exact rational, `G` is evaluated exactly, and
/// only the square root is taken in floating point.
pub fn vertical_path_length(p: &Poly, y0: &Rational, y1: &Rational) -> Result<LengthEstimate, MetricError> {
    if !y0.is_positive() || y0 >= y1 {
        return Err(MetricError::BadInterval);
    }
    if !p.is_real() {
        return Err(MetricError::NotReal);
    }
    let g = metric_density(p)?;
    let roots = count_real_roots(p, y0, y1);
    if roots > 0 {
        return Err(MetricError::RootInInterval { count: roots });
    }
    if !p.eval_real(y0).re.is_positive() {
        return Err(MetricError::NotPositiveOnInterval);
    }
    if g.numerator().is_zero() {
        return Ok(LengthEstimate { value: 0.0, error_bound: 0.0 });
    }
    let integrand = |t: f64| -> Result<f64, MetricError> {
        let y = t.exp();
        let exact = from_f64(y).expect("finite node");
        let gy = g.eval(&GaussianRational::real(exact)).expect("p has no root here").re;
        if gy.is_negative() {
            return Err(MetricError::NegativeDensity { at: y });
        }
        Ok(to_f64(&gy).sqrt() * y)
    };
    let (a, b) = (to_f64(y0).ln(), to_f64(y1).ln());
    let rough = integrate(integrand, a, b, 1.0)?.value.abs();
    let q = integrate(integrand, a, b, 0.1 * LENGTH_RTOL * (1.0 + rough))?;
    let tolerance = LENGTH_RTOL * (1.0 + q.value.abs());
    if q.error_bound > tolerance {
        return Err(MetricError::QuadratureFailed { bound: q.error_bound, tolerance });
    }
    Ok(LengthEstimate { value: q.value, error_bound: q.error_bound })
}

/// `y^2 G(y) → d/4`, extracted from leading coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareComparison {
    pub d: usize,
    pub limit: Rational,
    pub coefficient: PoincareCoefficient,
}

pub fn poincare_comparison(profile: &AsymptoticProfile) -> Result<PoincareComparison, MetricError> {
    if profile.d == 0 {
        return Err(MetricError::NoPoincareRegime);
    }
    let g = metric_density(&profile.p)?;
    let limit = match g.mul_poly(&Poly::monomial(GaussianRational::from_int(1), 2)).limit_at_infinity() {
        Limit::Finite(v) => v.re,
        Limit::Infinite => unreachable!("y^2 G has a finite limit for nonconstant p"),
    };
    debug_assert_eq!(limit, Rational::new((profile.d as i64).into(), 4.into()));
    Ok(PoincareComparison { d: profile.d, limit, coefficient: profile.poincare_coefficient.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::mhs::{HodgeFiltration, NilpotentEndo, PolarizedLattice};

    fn elliptic() -> LimitingMixedHodge {
        let q = ExactMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let lat = PolarizedLattice::new(1, q).unwrap();
        let n = ExactMatrix::from_i64(&[&[0, -1], &[0, 0]]);
        let endo = NilpotentEndo::new(lat, n).unwrap();
        let f = HodgeFiltration::new(vec![Subspace::full(2), Subspace::coordinate(2, &[1])]).unwrap();
        LimitingMixedHodge::new(endo, f, None).unwrap()
    }

    fn rp(cs: &[i64]) -> Poly {
        Poly::from_rationals(&cs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn elliptic_profile() {
        let frame = PeriodFrame::standard(elliptic());
        let m = hodge_norm_matrix(&frame).unwrap();
        assert_eq!(m.get(0, 0), &rp(&[0, 2]));
        let prof = asymptotic_profile(&frame).unwrap();
        assert_eq!(prof.d, 1);
        assert_eq!(prof.classification, Classification::InfiniteDistance);
        assert!(!nf_annihilation(&frame));
        assert_eq!(adapted_degree(&frame).degree, 1);
        let pc = poincare_comparison(&prof).unwrap();
        assert_eq!(pc.limit, rat(1, 4));
    }

    #[test]
    fn densities() {
        assert!(metric_density(&rp(&[1])).unwrap().numerator().is_zero());
        let g = metric_density(&rp(&[0, 2])).unwrap();
        assert_eq!(g, RationalFunction::new(rp(&[1]), rp(&[0, 0, 4])).unwrap());
        let g = metric_density(&rp(&[0, 0, 1])).unwrap();
        assert_eq!(g, RationalFunction::new(rp(&[1]), rp(&[0, 0, 2])).unwrap());
        assert_eq!(metric_density(&Poly::zero()), Err(MetricError::ZeroPolynomial));
    }

    #[test]
    fn lengths() {
        let big = int(1_000_000);
        let l = vertical_path_length(&rp(&[0, 2]), &int(1), &big).unwrap();
        assert!((l.value - 0.5 * 1e6f64.ln()).abs() < 1e-9 * (1.0 + l.value));
        let l = vertical_path_length(&rp(&[0, 0, 1]), &int(1), &big).unwrap();
        assert!((l.value - 0.5 * 2f64.sqrt() * 1e6f64.ln()).abs() < 1e-9 * (1.0 + l.value));
        assert_eq!(vertical_path_length(&rp(&[1]), &int(1), &big).unwrap().value, 0.0);
        assert_eq!(
            vertical_path_length(&rp(&[-4, 0, 1]), &int(1), &int(3)),
            Err(MetricError::RootInInterval { count: 1 })
        );
    }

    #[test]
    fn poincare_needs_degree() {
        let prof = AsymptoticProfile {
            p: rp(&[0, 0, 0, 0, 1]),
            d: 4,
            classification: Classification::InfiniteDistance,
            poincare_coefficient: PoincareCoefficient::new(4),
            nf_annihilated: false,
        };
        assert_eq!(poincare_comparison(&prof).unwrap().limit, int(1));
        let flat = AsymptoticProfile { p: rp(&[3]), d: 0, poincare_coefficient: PoincareCoefficient::new(0), ..prof };
        assert_eq!(poincare_comparison(&flat), Err(MetricError::NoPoincareRegime));
    }
}
