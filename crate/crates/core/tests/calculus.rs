mod common;

use common::{frame, monomial, monomial_with};
use gradus::{
    asymptotic_antiderivative, compare_order, differentiate, dominant_term, int, lhopital_check,
    rat, rectangle_form, replay_derivation, solve_area_equation, AntiderivativeCase,
    DerivationCase, Expression, GrowthMonomial, MonomialSum, OrderRelation, Rational,
};
use proptest::prelude::*;

/// `c·x^p·u^m·exp(-α/x^β)` at `0⁺`, in the internal frame.
fn integrand(c: Rational, p: Rational, m: Rational, exp: Option<(Rational, Rational)>) -> Expression {
    let exp: Vec<_> = exp.map(|(beta, alpha)| (beta, -alpha)).into_iter().collect();
    Expression::at_zero(GrowthMonomial::canonicalize(c, exp, -p, vec![m]).unwrap())
}

fn positive(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_num, 1..=max_den).prop_map(|(n, d)| rat(n, d))
}

fn signed_coeff() -> impl Strategy<Value = Rational> {
    (1i64..10, 1i64..5, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn supported_integrand() -> impl Strategy<Value = Expression> {
    let small = (-8i64..=8, 1i64..=3).prop_map(|(n, d)| rat(n, d));
    prop_oneof![
        // (a)
        (signed_coeff(), small.clone(), small.clone(), positive(6, 2), positive(6, 2))
            .prop_map(|(c, p, m, b, a)| integrand(c, p, m, Some((b, a)))),
        // (b), (c)
        (signed_coeff(), (0i64..20, 1i64..4), small.clone()).prop_map(|(c, (n, d), m)| {
            integrand(c, rat(n, d) - int(1) + rat(1, 4 * d), m, None)
        }),
        // (d), (e)
        (signed_coeff(), small).prop_map(|(c, m)| integrand(c, int(-1), m, None)),
    ]
}

proptest! {
    #[test]
    fn leibniz_rule(f in frame(), a in monomial(), b in monomial()) {
        let lhs = differentiate(&Expression::new(f, a.multiply(&b)));
        let da = differentiate(&Expression::new(f, a.clone()));
        let db = differentiate(&Expression::new(f, b.clone()));
        let rhs = db.times(&a).add(&da.times(&b));
        prop_assert!(lhs.same_terms(&rhs), "{:?} vs {:?}", lhs, rhs);
    }

    #[test]
    fn derivative_is_linear_in_the_coefficient(f in frame(), a in monomial(), c in signed_coeff()) {
        let d = differentiate(&Expression::new(f, a.clone()));
        let dc = differentiate(&Expression::new(f, a.scale(&c).unwrap()));
        let scaled: MonomialSum = d.terms().iter().map(|t| t.scale(&c).unwrap()).collect();
        prop_assert!(dc.same_terms(&scaled));
    }

    #[test]
    fn lhopital_is_consistent(f in frame(), p in monomial(), q in monomial()) {
        let one = GrowthMonomial::one();
        let (sp, sq) = (compare_order(&p, &one), compare_order(&q, &one));
        let indeterminate = matches!(
            (&sp, &sq),
            (OrderRelation::Smaller, OrderRelation::Smaller) | (OrderRelation::Greater, OrderRelation::Greater)
        );
        let report = lhopital_check(&Expression::new(f, p), &Expression::new(f, q));
        if indeterminate {
            let report = report.unwrap();
            prop_assert!(report.consistent, "{:?}", report);
        } else {
            prop_assert_eq!(report.unwrap_err().code(), "E_PRECONDITION");
        }
    }

    #[test]
    fn antiderivative_round_trip(y in supported_integrand()) {
        let r = asymptotic_antiderivative(&y).unwrap();
        let d = differentiate(&r.expression());
        prop_assert_eq!(dominant_term(&d).unwrap(), y.value.clone());
        match r.case {
            AntiderivativeCase::Power | AntiderivativeCase::LogOverX | AntiderivativeCase::InverseXLog => {
                prop_assert!(r.exact);
                prop_assert!(d.same_terms(&MonomialSum::from_terms([y.value.clone()])));
            }
            _ => {}
        }
        if r.rectangle.is_some() {
            prop_assert!(rectangle_form(&r, &y).is_ok());
        }
    }

    #[test]
    fn antiderivative_vanishes_at_zero(y in supported_integrand()) {
        let r = asymptotic_antiderivative(&y).unwrap();
        if r.case != AntiderivativeCase::LogOverX && r.case != AntiderivativeCase::InverseXLog {
            prop_assert_eq!(compare_order(&r.antiderivative, &GrowthMonomial::one()), OrderRelation::Smaller);
        }
    }

    #[test]
    fn solve_area_round_trip(cn in 1i64..=100, cd in 1i64..=10, sn in 1i64..=50, sd in 1i64..=10) {
        let c = rat(cn, cd);
        let s = int(1) + rat(sn, sd);
        prop_assume!(c <= int(10) && s <= int(6));
        let y = solve_area_equation(&c, &s).unwrap();
        let r = asymptotic_antiderivative(&y).unwrap();
        prop_assert_eq!(rectangle_form(&r, &y).unwrap(), (s, c));
    }

    #[test]
    fn non_zero_frame_is_rejected(m in monomial_with(1, true)) {
        let e = Expression::at_infinity(m);
        prop_assert_eq!(asymptotic_antiderivative(&e).unwrap_err().code(), "E_PRECONDITION");
    }
}

#[test]
fn derivation_replays_verify_for_many_n() {
    for n in 1..=40 {
        for id in ["E507-9", "E507-16", "E507-21"] {
            let case = DerivationCase::from_id(id, n).unwrap();
            let report = replay_derivation(case).unwrap();
            assert!(report.all_verified(), "{id} n={n}");
            assert_eq!(report.verdict, report.direct, "{id} n={n}");
        }
    }
}
