#![allow(dead_code)]

use gradus::{int, rat, Expression, Frame, GrowthMonomial, Rational};
use proptest::prelude::*;
use rand::Rng;

pub fn small_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_num, 1..=max_den, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn beta() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rat(1, 2)), Just(int(1)), Just(rat(3, 2)), Just(int(2)), Just(int(3))]
}

/// Monomials with bounded exponents, at most two exp terms and log depth
/// `max_depth`.
pub fn monomial_with(max_depth: usize, signed: bool) -> impl Strategy<Value = GrowthMonomial> {
    let coeff = (1..=9i64, 1..=4i64, any::<bool>())
        .prop_map(move |(n, d, neg)| rat(if signed && neg { -n } else { n }, d));
    (
        coeff,
        prop::collection::vec((beta(), nonzero_rational(4, 3)), 0..=2),
        small_rational(6, 3),
        prop::collection::vec(small_rational(4, 2), 0..=max_depth),
    )
        .prop_map(|(c, exp, p, logs)| GrowthMonomial::canonicalize(c, exp, p, logs).unwrap())
}

pub fn monomial() -> impl Strategy<Value = GrowthMonomial> {
    monomial_with(3, true)
}

pub fn frame() -> impl Strategy<Value = Frame> {
    prop_oneof![Just(Frame::Infinity), Just(Frame::ZeroPlus)]
}

/// Expressions the parser can produce (positive coefficients).
pub fn expression() -> impl Strategy<Value = Expression> {
    (frame(), monomial_with(4, false)).prop_map(|(f, m)| Expression::new(f, m))
}

pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

pub fn random_nonzero<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let n = rng.gen_range(1..=max_num);
    let n = if rng.gen_bool(0.5) { -n } else { n };
    rat(n, rng.gen_range(1..=max_den))
}

/// Random monomial for the seeded suites.
pub fn random_monomial<R: Rng>(rng: &mut R, max_depth: usize) -> GrowthMonomial {
    let betas = [rat(1, 2), int(1), rat(3, 2), int(2), int(3)];
    let coeff = rat(rng.gen_range(1..=9), rng.gen_range(1..=4));
    let coeff = if rng.gen_bool(0.3) { -coeff } else { coeff };
    let n_exp = match rng.gen_range(0..10) {
        0..=5 => 0,
        6..=8 => 1,
        _ => 2,
    };
    let exp: Vec<_> = (0..n_exp)
        .map(|_| (betas[rng.gen_range(0..betas.len())].clone(), random_nonzero(rng, 4, 3)))
        .collect();
    let pow = random_rational(rng, 6, 3);
    let depth = rng.gen_range(0..=max_depth);
    let logs = (0..depth).map(|_| random_rational(rng, 4, 2)).collect();
    GrowthMonomial::canonicalize(coeff, exp, pow, logs).unwrap()
}
