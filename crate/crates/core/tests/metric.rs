mod common;

use common::{fixture_path, g, leibniz_det};
use degen::exact::rational::{from_f64, int, rat, to_f64};
use degen::exact::{ExactMatrix, GaussianRational, Poly, Rational};
use degen::fixtures::random::{random_invertible, random_lmhs};
use degen::metric::{
    adapted_degree, asymptotic_profile, hodge_norm_matrix, metric_density, poincare_comparison, vertical_path_length,
    Classification, MetricError, PeriodFrame,
};
use degen::mhs::LimitingMixedHodge;
use degen::report::input::{parse_fixture, Fixture};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn load(name: &str) -> LimitingMixedHodge {
    let src = std::fs::read_to_string(fixture_path(name)).unwrap();
    match parse_fixture(&src).unwrap() {
        Fixture::Lmhs(f) => f.lmhs,
        _ => panic!("{name} is not a structure"),
    }
}

fn rp(cs: &[i64]) -> Poly {
    Poly::from_rationals(&cs.iter().map(|&c| int(c)).collect::<Vec<_>>())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// `M(y)` built directly: `e^{2iyN}` summed as a finite series at a fixed `y`.
fn norm_matrix_at(frame: &PeriodFrame, y: &Rational) -> ExactMatrix {
    let l = frame.lmhs();
    let n = l.endo().n();
    let dim = l.dim();
    let z = GaussianRational::new(int(0), y * int(2));
    let zn = n.scale(&z);
    let mut term = ExactMatrix::identity(dim);
    let mut exp = ExactMatrix::identity(dim);
    for k in 1..=dim {
        term = (&term * &zn).scale(&GaussianRational::real(rat(1, k as i64)));
        exp = &exp + &term;
    }
    let a = frame.matrix();
    let ip = GaussianRational::i_pow(l.weight());
    (&(&(&exp * &a).transpose() * l.endo().lattice().q()) * &a.conj()).scale(&ip)
}

#[test]
fn elliptic_profile_and_lengths() {
    let frame = PeriodFrame::standard(load("elliptic"));
    let prof = asymptotic_profile(&frame).unwrap();
    assert_eq!(prof.p, rp(&[0, 2]));
    assert_eq!(prof.d, 1);
    assert_eq!(prof.classification, Classification::InfiniteDistance);
    let gd = metric_density(&prof.p).unwrap();
    for y in [rat(1, 3), int(1), int(7), int(1000)] {
        let expect = GaussianRational::real(Rational::from_integer(1.into()) / (int(4) * &y * &y));
        assert_eq!(gd.eval(&GaussianRational::real(y)).unwrap(), expect);
    }
    for big in [1_000i64, 1_000_000] {
        let l = vertical_path_length(&prof.p, &int(1), &int(big)).unwrap();
        let exact = 0.5 * (big as f64).ln();
        assert!(rel(l.value, exact) < 1e-9, "Y = {big}: {} vs {exact}", l.value);
    }
    assert_eq!(poincare_comparison(&prof).unwrap().limit, rat(1, 4));
}

#[test]
fn two_blocks_double_the_degree() {
    let frame = PeriodFrame::standard(load("two_block"));
    let prof = asymptotic_profile(&frame).unwrap();
    assert_eq!(prof.p, rp(&[0, 0, 4]));
    assert_eq!(adapted_degree(&frame).degree, 2);
    let l = vertical_path_length(&prof.p, &int(2), &int(2000)).unwrap();
    let exact = 2f64.sqrt() / 2.0 * 1000f64.ln();
    assert!(rel(l.value, exact) < 1e-9);
    assert_eq!(poincare_comparison(&prof).unwrap().limit, rat(1, 2));
}

#[test]
fn finite_distance_cases() {
    for name in ["pure", "offset_monodromy"] {
        let frame = PeriodFrame::standard(load(name));
        let prof = asymptotic_profile(&frame).unwrap();
        assert_eq!(prof.d, 0, "{name}");
        assert!(prof.nf_annihilated);
        assert_eq!(prof.classification, Classification::FiniteDistance);
        let l = vertical_path_length(&prof.p, &int(1), &int(1_000_000)).unwrap();
        assert_eq!(l.value, 0.0);
        assert_eq!(poincare_comparison(&prof).unwrap_err(), MetricError::NoPoincareRegime);
    }
    // N is nonzero on the offset structure but kills F^n
    assert!(!load("offset_monodromy").endo().n().is_zero());
}

#[test]
fn length_preconditions() {
    let p = rp(&[0, 2]);
    assert_eq!(vertical_path_length(&p, &int(2), &int(1)).unwrap_err(), MetricError::BadInterval);
    assert_eq!(vertical_path_length(&p, &int(0), &int(1)).unwrap_err(), MetricError::BadInterval);
    assert_eq!(vertical_path_length(&rp(&[-2, 1]), &int(1), &int(3)).unwrap_err(), MetricError::RootInInterval { count: 1 });
    assert_eq!(vertical_path_length(&rp(&[-2, 1]), &int(1), &rat(3, 2)).unwrap_err(), MetricError::NotPositiveOnInterval);
    // G = (y^2 - 1) / (2 (y^2 + 1)^2) is negative below 1
    assert!(matches!(
        vertical_path_length(&rp(&[1, 0, 1]), &rat(1, 2), &int(2)),
        Err(MetricError::NegativeDensity { .. })
    ));
    assert!(vertical_path_length(&rp(&[1, 0, 1]), &int(1), &int(50)).is_ok());
}

#[test]
fn length_is_additive() {
    let p = rp(&[3, 1, 2]);
    let whole = vertical_path_length(&p, &int(1), &int(100)).unwrap().value;
    let a = vertical_path_length(&p, &int(1), &int(9)).unwrap().value;
    let b = vertical_path_length(&p, &int(9), &int(100)).unwrap().value;
    assert!(rel(a + b, whole) < 1e-9);
}

#[test]
fn frame_errors() {
    let l = load("two_block");
    let e2 = vec![g(0, 0), g(1, 0), g(0, 0), g(0, 0)];
    let e4 = vec![g(0, 0), g(0, 0), g(0, 0), g(1, 0)];
    let e1 = vec![g(1, 0), g(0, 0), g(0, 0), g(0, 0)];
    assert_eq!(PeriodFrame::new(l.clone(), vec![e2.clone(), e2.clone()]).unwrap_err(), MetricError::FrameDependent);
    assert_eq!(
        PeriodFrame::new(l.clone(), vec![e2.clone(), e1]).unwrap_err(),
        MetricError::FrameNotSpanning { spanned: 1, pg: 2 }
    );
    assert!(matches!(PeriodFrame::new(l.clone(), vec![vec![g(1, 0)]]), Err(MetricError::FrameShape { .. })));
    assert!(PeriodFrame::new(l, vec![e4, e2]).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_matrix_is_hermitian_and_matches_series(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_lmhs(&mut rng, 6);
        let frame = PeriodFrame::standard(s.lmhs.clone());
        let m = hodge_norm_matrix(&frame).unwrap();
        prop_assert_eq!(leibniz_det(&m), asymptotic_profile(&frame).unwrap().p);
        for y in [int(1), int(2), rat(1, 3)] {
            let at = m.eval_real(&y);
            prop_assert_eq!(&at, &at.conj_transpose());
            prop_assert_eq!(&at, &norm_matrix_at(&frame, &y));
        }
    }

    #[test]
    fn degree_and_density_are_frame_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_lmhs(&mut rng, 6);
        let frame = PeriodFrame::standard(s.lmhs.clone());
        let gm = random_invertible(&mut rng, frame.pg());
        let other = frame.recombined(&gm).unwrap();
        let (p, q) = (asymptotic_profile(&frame).unwrap(), asymptotic_profile(&other).unwrap());
        prop_assert_eq!(p.d, s.expected_degree);
        prop_assert_eq!(q.d, p.d);
        prop_assert_eq!(adapted_degree(&frame).degree, p.d as i64);
        // p changes by the positive constant |det g|^2
        prop_assert_eq!(p.p.scale(&q.p.leading()), q.p.scale(&p.p.leading()));
        let (gp, gq) = (metric_density(&p.p).unwrap(), metric_density(&q.p).unwrap());
        for y in [int(3), rat(7, 2), int(40)] {
            let y = GaussianRational::real(y);
            prop_assert_eq!(gp.eval(&y), gq.eval(&y));
        }
    }

    #[test]
    fn density_approaches_poincare(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_lmhs(&mut rng, 6);
        let prof = asymptotic_profile(&PeriodFrame::standard(s.lmhs)).unwrap();
        prop_assume!(prof.d > 0);
        let pc = poincare_comparison(&prof).unwrap();
        prop_assert_eq!(pc.limit.clone(), Rational::new((prof.d as i64).into(), 4.into()));
        let gd = metric_density(&prof.p).unwrap();
        let y = from_f64(1e8).unwrap();
        let y2g = to_f64(&(gd.eval(&GaussianRational::real(y.clone())).unwrap().re * &y * &y));
        prop_assert!((y2g - prof.d as f64 / 4.0).abs() < 1e-4, "{y2g} vs {}", prof.d);
    }
}
