mod common;

use common::monomial_with;
use gradus::{
    asymptotic_antiderivative, compare_order, eval_log, int, rat, verify_antiderivative_numeric,
    verify_order_numeric, Expression, Frame, GrowthMonomial, OrderRelation, Rational, SampleGrid,
    Verdict,
};
use proptest::prelude::*;

fn wide_grid() -> SampleGrid {
    SampleGrid::geometric(Frame::Infinity, 10.0, 1e250, 12).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn numeric_never_contradicts_symbolic(a in monomial_with(3, true), b in monomial_with(3, true)) {
        let grid = wide_grid().clamped(&[&a, &b]).unwrap();
        let report = verify_order_numeric(&a, &b, &grid);
        prop_assert_ne!(report.verdict, Verdict::Fail, "{} vs {}: {:?}", a, b, report);
    }

    #[test]
    fn same_order_delta_is_constant(a in monomial_with(3, true), n in 1i64..50, d in 1i64..50) {
        let b = a.scale(&rat(n, d)).unwrap();
        let grid = wide_grid().clamped(&[&a, &b]).unwrap();
        let report = verify_order_numeric(&a, &b, &grid);
        prop_assert_eq!(report.verdict, Verdict::Pass);
        let first = report.samples[0].1;
        prop_assert!(report.samples.iter().all(|s| (s.1 - first).abs() <= 1e-12));
    }

    #[test]
    fn pure_powers_evaluate_to_the_ulp(n in 1i64..1000, d in 1i64..100, p in -40i64..40, q in 1i64..7, t in 1.5f64..1e300) {
        let c = rat(n, d);
        let m = GrowthMonomial::canonicalize(c, vec![], rat(p, q), vec![]).unwrap();
        let oracle = (n as f64).ln() - (d as f64).ln() + (p as f64 / q as f64) * t.ln();
        let got = eval_log(&m, t).unwrap();
        let ulp = f64::EPSILON * oracle.abs().max((n as f64).ln()).max(1.0);
        prop_assert!((got - oracle).abs() <= 4.0 * ulp, "{} vs {}", got, oracle);
    }
}

fn exact_branches() -> Vec<Expression> {
    let z = |c: Rational, exp: Vec<(Rational, Rational)>, p: Rational, logs: Vec<Rational>| {
        Expression::at_zero(GrowthMonomial::canonicalize(c, exp, -p, logs).unwrap())
    };
    vec![
        z(int(1), vec![], int(2), vec![]),
        z(rat(3, 2), vec![], rat(-1, 2), vec![]),
        z(int(1), vec![], int(-1), vec![]),
        z(int(-2), vec![], int(-1), vec![int(3)]),
        z(int(5), vec![], int(-1), vec![rat(-1, 2)]),
        z(int(1), vec![], int(-1), vec![int(-1)]),
        z(int(1), vec![(int(1), int(-1))], int(-2), vec![]),
        z(int(3), vec![(int(2), rat(-1, 2))], int(-3), vec![]),
    ]
}

#[test]
fn exact_branches_match_quadrature() {
    let xs = [0.2, 0.1, 0.05];
    for y in exact_branches() {
        let r = asymptotic_antiderivative(&y).unwrap();
        assert!(r.exact, "{y}");
        let report = verify_antiderivative_numeric(&y, &r, &xs).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{y}: {report:?}");
        assert!(report.errors.iter().all(|e| *e <= 1e-8), "{y}: {:?}", report.errors);
    }
}

#[test]
fn slow_log_divergence_is_resolved() {
    let l2 = GrowthMonomial::iterated_log(2, int(1));
    let l1 = GrowthMonomial::iterated_log(1, int(1));
    assert_eq!(compare_order(&l2, &l1), OrderRelation::Smaller);
    let grid = SampleGrid::geometric(Frame::Infinity, 1e35, 1e300, 12).unwrap();
    let report = verify_order_numeric(&l2, &l1, &grid);
    assert_eq!(report.verdict, Verdict::Pass);
    let last = report.samples.last().unwrap().1;
    assert!((last + 4.66).abs() < 0.01, "{last}");
}

#[test]
fn exact_branches_hold_deep_near_zero() {
    let xs = [1e-3, 1e-4, 1e-5, 1e-6];
    for y in exact_branches() {
        let r = asymptotic_antiderivative(&y).unwrap();
        let report = verify_antiderivative_numeric(&y, &r, &xs).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{y}: {report:?}");
    }
}

#[test]
fn unresolvable_samples_are_not_failures() {
    let y = gradus::parse("exp(-1/x)*u^20/x^3", Frame::ZeroPlus).unwrap();
    let r = asymptotic_antiderivative(&y).unwrap();
    let report = verify_antiderivative_numeric(&y, &r, &[1e-250, 1e-280, 1e-300]).unwrap();
    assert_eq!(report.verdict, Verdict::Inconclusive);
    assert!(report.errors.iter().all(|e| e.is_nan()));
    let report = verify_antiderivative_numeric(&y, &r, &[0.2, 0.05, 0.01, 1e-3, 1e-30]).unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
}
