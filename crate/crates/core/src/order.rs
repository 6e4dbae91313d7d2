//! Order relations between growth monomials.
//!
//! Orders are compared lexicographically: the exponential part dominates,
//! then the power of `t`, then the iterated-log exponents from the outermost
//! `log` inwards. Coefficients only matter once the shapes agree.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{Expression, GrowthMonomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderRelation {
    Smaller,
    Greater,
    /// Same order; the ratio of absolute coefficients.
    Same(Rational),
}

impl OrderRelation {
    /// `Same` collapses to `Equal` regardless of the ratio.
    pub fn ordering(&self) -> Ordering {
        match self {
            OrderRelation::Smaller => Ordering::Less,
            OrderRelation::Greater => Ordering::Greater,
            OrderRelation::Same(_) => Ordering::Equal,
        }
    }

    pub fn flip(&self) -> OrderRelation {
        match self {
            OrderRelation::Smaller => OrderRelation::Greater,
            OrderRelation::Greater => OrderRelation::Smaller,
            OrderRelation::Same(r) => OrderRelation::Same(r.recip()),
        }
    }

    pub fn is_same(&self) -> bool {
        matches!(self, OrderRelation::Same(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            OrderRelation::Smaller => "smaller",
            OrderRelation::Greater => "greater",
            OrderRelation::Same(_) => "same",
        }
    }
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderRelation::Same(r) => write!(f, "same (ratio {r})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitValue {
    Zero,
    Finite(Rational),
    Infinite(Sign),
}

impl LimitValue {
    pub fn name(&self) -> &'static str {
        match self {
            LimitValue::Zero => "zero",
            LimitValue::Finite(_) => "finite",
            LimitValue::Infinite(_) => "infinite",
        }
    }
}

impl fmt::Display for LimitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitValue::Zero => f.write_str("zero"),
            LimitValue::Finite(r) => write!(f, "finite({r})"),
            LimitValue::Infinite(Sign::Positive) => f.write_str("infinite(+)"),
            LimitValue::Infinite(Sign::Negative) => f.write_str("infinite(-)"),
        }
    }
}

/// Euler's three classes: powers, iterated logs, exponentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderClass {
    Class1,
    Class2,
    Class3,
}

impl OrderClass {
    pub fn name(self) -> &'static str {
        match self {
            OrderClass::Class1 => "class1",
            OrderClass::Class2 => "class2",
            OrderClass::Class3 => "class3",
        }
    }
}

impl fmt::Display for OrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn relation_from(ord: Ordering, m1: &GrowthMonomial, m2: &GrowthMonomial) -> OrderRelation {
    match ord {
        Ordering::Less => OrderRelation::Smaller,
        Ordering::Greater => OrderRelation::Greater,
        Ordering::Equal => OrderRelation::Same((m1.coeff() / m2.coeff()).abs()),
    }
}

/// Compares `|m1|` against `|m2|` as `t → ∞`.
pub fn compare_order(m1: &GrowthMonomial, m2: &GrowthMonomial) -> OrderRelation {
    let diff = m1.exp_part().sub(m2.exp_part());
    if let Some((_, alpha)) = diff.leading() {
        let ord = if alpha.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        return relation_from(ord, m1, m2);
    }
    let ord = m1.pow_exp().cmp(m2.pow_exp());
    if ord != Ordering::Equal {
        return relation_from(ord, m1, m2);
    }
    let depth = m1.log_exps().len().max(m2.log_exps().len());
    for j in 1..=depth {
        let ord = m1.log_exp(j).cmp(&m2.log_exp(j));
        if ord != Ordering::Equal {
            return relation_from(ord, m1, m2);
        }
    }
    relation_from(Ordering::Equal, m1, m2)
}

/// Limit of `m1(t)/m2(t)` as `t → ∞`, with sign.
pub fn ratio_limit(m1: &GrowthMonomial, m2: &GrowthMonomial) -> LimitValue {
    let ratio = m1.coeff() / m2.coeff();
    match compare_order(m1, m2) {
        OrderRelation::Greater => LimitValue::Infinite(Sign::of(&ratio)),
        OrderRelation::Smaller => LimitValue::Zero,
        OrderRelation::Same(_) => LimitValue::Finite(ratio),
    }
}

/// Limit of the monomial itself at the frame point.
pub fn limit_of(m: &GrowthMonomial) -> LimitValue {
    ratio_limit(m, &GrowthMonomial::one())
}

pub fn classify(e: &Expression) -> OrderClass {
    let v = &e.value;
    if !v.exp_part().is_empty() {
        OrderClass::Class3
    } else if !v.log_exps().is_empty() {
        OrderClass::Class2
    } else {
        OrderClass::Class1
    }
}

/// An order strictly between `m1` and `m2`: the exponent-vector midpoint
/// with coefficient 1.
pub fn between(m1: &GrowthMonomial, m2: &GrowthMonomial) -> Result<GrowthMonomial> {
    if compare_order(m1, m2).is_same() {
        return Err(Error::SameOrder);
    }
    let half = Rational::new(1.into(), 2.into());
    let mid = m1
        .with_coeff(Rational::one())?
        .multiply(&m2.with_coeff(Rational::one())?);
    mid.power(&half)
}

/// JSON form of a rational: `{"num": …, "den": …}`.
pub(crate) struct RationalJson<'a>(pub &'a Rational);

impl Serialize for RationalJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        crate::json::entry_int(&mut map, "num", self.0.numer())?;
        crate::json::entry_int(&mut map, "den", self.0.denom())?;
        map.end()
    }
}

impl Serialize for OrderRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("relation", self.name())?;
        if let OrderRelation::Same(r) = self {
            map.serialize_entry("ratio", &RationalJson(r))?;
        }
        map.end()
    }
}

impl Serialize for LimitValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("limit", self.name())?;
        match self {
            LimitValue::Zero => map.serialize_entry("sign", &0)?,
            LimitValue::Infinite(sign) => map.serialize_entry("sign", &sign.as_i8())?,
            LimitValue::Finite(r) => {
                let sign: i8 = if r.is_zero() { 0 } else { Sign::of(r).as_i8() };
                map.serialize_entry("sign", &sign)?;
                map.serialize_entry("value", &RationalJson(r))?;
            }
        }
        map.end()
    }
}

impl Serialize for OrderClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("class", self.name())?;
        map.end()
    }
}
