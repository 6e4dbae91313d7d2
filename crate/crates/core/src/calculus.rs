//! Differentiation over monomial sums, dominant terms, L'Hôpital checks and
//! asymptotic antiderivatives near `0⁺`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::display::render;
use crate::error::{Error, Result};
use crate::json::Compact;
use crate::monomial::{Expression, Frame, GrowthMonomial};
use crate::order::{compare_order, ratio_limit, LimitValue, OrderRelation};
use crate::rational::{int, Rational};
use crate::sum::MonomialSum;

fn factor(coeff: Rational, pow: Rational, logs: Vec<Rational>) -> GrowthMonomial {
    GrowthMonomial::canonicalize(coeff, [], pow, logs).expect("nonzero coefficient")
}

/// `dM/dt` in the internal frame.
///
/// `M' = M·(E'(t) + a0/t + Σ_j a_j/(t·L_1⋯L_j))`, expanded term by term.
pub fn derivative_t(m: &GrowthMonomial) -> MonomialSum {
    let mut out = MonomialSum::zero();
    for (beta, alpha) in m.exp_part().iter() {
        out.push(m.multiply(&factor(alpha * beta, beta - int(1), vec![])));
    }
    if !m.pow_exp().is_zero() {
        out.push(m.multiply(&factor(m.pow_exp().clone(), int(-1), vec![])));
    }
    for (j, a) in m.log_exps().iter().enumerate() {
        if !a.is_zero() {
            out.push(m.multiply(&factor(a.clone(), int(-1), vec![int(-1); j + 1])));
        }
    }
    out
}

/// Derivative with respect to the frame variable `x`, returned in the
/// internal frame. At `0⁺`, `d/dx = -t²·d/dt`.
pub fn differentiate(e: &Expression) -> MonomialSum {
    let dt = derivative_t(&e.value);
    match e.frame {
        Frame::Infinity => dt,
        Frame::ZeroPlus => dt.times(&factor(int(-1), int(2), vec![])),
    }
}

/// The unique term of maximal order.
pub fn dominant_term(s: &MonomialSum) -> Result<GrowthMonomial> {
    s.terms()
        .iter()
        .reduce(|best, t| match compare_order(t, best) {
            OrderRelation::Greater => t,
            _ => best,
        })
        .cloned()
        .ok_or(Error::ZeroSum)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LhopitalReport {
    pub consistent: bool,
    pub direct: LimitValue,
    pub derivative_based: LimitValue,
}

/// Evaluates `p/q` directly and through `dp/dq`, for a `0/0` or `∞/∞` pair.
pub fn lhopital_check(p: &Expression, q: &Expression) -> Result<LhopitalReport> {
    if p.frame != q.frame {
        return Err(Error::Precondition(format!(
            "numerator is at {} but denominator is at {}",
            p.frame, q.frame
        )));
    }
    let one = GrowthMonomial::one();
    let shape = (compare_order(&p.value, &one), compare_order(&q.value, &one));
    match shape {
        (OrderRelation::Smaller, OrderRelation::Smaller)
        | (OrderRelation::Greater, OrderRelation::Greater) => {}
        _ => {
            return Err(Error::Precondition(
                "L'Hôpital needs both sides tending to 0 or both to infinity".into(),
            ))
        }
    }
    let direct = ratio_limit(&p.value, &q.value);
    let dp = dominant_term(&differentiate(p))?;
    let dq = dominant_term(&differentiate(q))?;
    let derivative_based = ratio_limit(&dp, &dq);
    Ok(LhopitalReport {
        consistent: direct == derivative_based,
        direct,
        derivative_based,
    })
}

/// Which closed form produced an antiderivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntiderivativeCase {
    /// `c·x^p·u^m·exp(-α/x^β)`.
    Exponential,
    /// `c·x^p`, `p > -1`.
    Power,
    /// `c·x^p·u^m`, `p > -1`, `m ≠ 0`.
    PowerLog,
    /// `c·u^m/x`, `m ≠ -1`.
    LogOverX,
    /// `c/(x·u)`.
    InverseXLog,
}

impl AntiderivativeCase {
    pub fn label(self) -> &'static str {
        match self {
            AntiderivativeCase::Exponential => "a",
            AntiderivativeCase::Power => "b",
            AntiderivativeCase::PowerLog => "c",
            AntiderivativeCase::LogOverX => "d",
            AntiderivativeCase::InverseXLog => "e",
        }
    }
}

/// Relative size of the terms discarded when the antiderivative is only
/// asymptotic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Exact,
    /// Error of relative order `1/u`.
    InverseLog,
    /// Error of relative order `x^β`.
    PowerOfX(Rational),
}

impl Validity {
    /// Size of the relative error at `x`.
    pub fn scale(&self, x: f64) -> f64 {
        match self {
            Validity::Exact => 0.0,
            Validity::InverseLog => 1.0 / (1.0 / x).ln(),
            Validity::PowerOfX(b) => x.powf(crate::rational::to_f64(b)),
        }
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::Exact => f.write_str("exact"),
            Validity::InverseLog => f.write_str("O(1/u)"),
            Validity::PowerOfX(b) if b.is_one() => f.write_str("O(x)"),
            Validity::PowerOfX(b) if b.is_integer() => write!(f, "O(x^{b})"),
            Validity::PowerOfX(b) => write!(f, "O(x^({b}))"),
        }
    }
}

/// `area = constant · x^s · y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub s: Rational,
    pub constant: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiderivativeResult {
    /// Internal-frame value at `0⁺`.
    pub antiderivative: GrowthMonomial,
    pub exact: bool,
    pub case: AntiderivativeCase,
    /// Absent for the `1/x` cases, whose antiderivative carries an extra log.
    pub rectangle: Option<Rectangle>,
    pub validity: Validity,
}

impl AntiderivativeResult {
    pub fn expression(&self) -> Expression {
        Expression::at_zero(self.antiderivative.clone())
    }
}

/// `x^s` in the `0⁺` internal frame.
fn x_power(s: &Rational) -> GrowthMonomial {
    GrowthMonomial::power_of_t(-s)
}

/// Antiderivative of `c·x^p·u^m·exp(-α/x^β)` valid as `x → 0⁺`.
pub fn asymptotic_antiderivative(e: &Expression) -> Result<AntiderivativeResult> {
    if e.frame != Frame::ZeroPlus {
        return Err(Error::Precondition(
            "asymptotic integration is only defined at 0+".into(),
        ));
    }
    let y = &e.value;
    if y.log_exps().len() > 1 {
        return Err(Error::Precondition(
            "integrand may only carry powers of u, not deeper logs".into(),
        ));
    }
    if y.exp_part().len() > 1 {
        return Err(Error::Precondition(
            "integrand may carry at most one exponential term".into(),
        ));
    }
    let p = -y.pow_exp();
    let m = y.log_exp(1);
    let c = y.coeff().clone();

    let (case, antiderivative, rectangle, asymptotic) = if let Some((beta, a)) = y.exp_part().leading() {
        if a.is_positive() {
            return Err(Error::Divergent(format!(
                "exp({}) grows without bound at 0+",
                render(&GrowthMonomial::power_of_t(beta.clone()).with_coeff(a.clone())?, Frame::ZeroPlus)
            )));
        }
        let alpha = -a;
        let constant = (&alpha * beta).recip();
        let s = beta + int(1);
        let f = y.multiply(&x_power(&s)).scale(&constant)?;
        (
            AntiderivativeCase::Exponential,
            f,
            Some(Rectangle { s, constant }),
            Validity::PowerOfX(beta.clone()),
        )
    } else if p < int(-1) {
        return Err(Error::Divergent(format!(
            "x^({p}) is not integrable at 0+"
        )));
    } else if p > int(-1) {
        let constant = (&p + int(1)).recip();
        let s = int(1);
        let f = y.multiply(&x_power(&s)).scale(&constant)?;
        let case = if m.is_zero() {
            AntiderivativeCase::Power
        } else {
            AntiderivativeCase::PowerLog
        };
        (case, f, Some(Rectangle { s, constant }), Validity::InverseLog)
    } else if m != int(-1) {
        let k = &m + int(1);
        let f = factor(-&c / &k, int(0), vec![k]);
        (AntiderivativeCase::LogOverX, f, None, Validity::Exact)
    } else {
        let f = factor(-c, int(0), vec![int(0), int(1)]);
        (AntiderivativeCase::InverseXLog, f, None, Validity::Exact)
    };

    let derivative = differentiate(&Expression::at_zero(antiderivative.clone()));
    let exact = derivative.same_terms(&MonomialSum::from_terms([y.clone()]));
    Ok(AntiderivativeResult {
        antiderivative,
        exact,
        case,
        rectangle,
        validity: if exact { Validity::Exact } else { asymptotic },
    })
}

/// The `(s, constant)` with `F = constant·x^s·y`, checked by canonical equality.
pub fn rectangle_form(r: &AntiderivativeResult, integrand: &Expression) -> Result<(Rational, Rational)> {
    let rect = r.rectangle.as_ref().ok_or_else(|| {
        Error::Precondition("this antiderivative is not a rectangle multiple of the integrand".into())
    })?;
    let rebuilt = integrand
        .value
        .multiply(&x_power(&rect.s))
        .scale(&rect.constant)?;
    if rebuilt != r.antiderivative {
        return Err(Error::Precondition(
            "antiderivative was not produced from this integrand".into(),
        ));
    }
    Ok((rect.s.clone(), rect.constant.clone()))
}

/// Solves `∫y dx = c·x^s·y` near `0⁺`: `y = x^(-s)·exp(-α/x^β)` with
/// `β = s-1` and `α = 1/(c·(s-1))`.
pub fn solve_area_equation(c: &Rational, s: &Rational) -> Result<Expression> {
    if !c.is_positive() {
        return Err(Error::Precondition(format!("area constant {c} must be positive")));
    }
    if *s <= int(1) {
        return Err(Error::Precondition(format!("exponent {s} must exceed 1")));
    }
    let beta = s - int(1);
    let alpha = (c * &beta).recip();
    let y = x_power(&-s).multiply(&GrowthMonomial::exponential(beta, -alpha)?);
    Ok(Expression::at_zero(y))
}

impl Serialize for LhopitalReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("consistent", &self.consistent)?;
        map.serialize_entry("direct", &self.direct)?;
        map.serialize_entry("derivative_based", &self.derivative_based)?;
        map.end()
    }
}

struct RectangleJson<'a>(&'a Rectangle);

impl Serialize for RectangleJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("s", &Compact(&self.0.s))?;
        map.serialize_entry("const", &Compact(&self.0.constant))?;
        map.end()
    }
}

impl Serialize for AntiderivativeResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("antiderivative", &render(&self.antiderivative, Frame::ZeroPlus))?;
        map.serialize_entry("rectangle", &self.rectangle.as_ref().map(RectangleJson))?;
        map.serialize_entry("exact", &self.exact)?;
        map.serialize_entry("case", self.case.label())?;
        map.serialize_entry("validity", &self.validity.to_string())?;
        map.serialize_entry("monomial", &self.antiderivative.notation())?;
        map.end()
    }
}
