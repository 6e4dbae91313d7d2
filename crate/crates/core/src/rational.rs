//! Exact rational scalars used for every coefficient and exponent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let ln = ln_abs(r);
    let mag = ln.exp();
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

/// `ln |r|` without overflowing on huge numerators or denominators.
pub fn ln_abs(r: &Rational) -> f64 {
    ln_abs_int(r.numer()) - ln_abs_int(r.denom())
}

fn ln_abs_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().map(f64::ln).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact `base^exponent`, rejected when the result would be irrational.
pub fn pow(base: &Rational, exponent: &Rational) -> Result<Rational> {
    if exponent.is_zero() {
        return Ok(Rational::one());
    }
    if base.is_zero() {
        return if exponent.is_positive() {
            Ok(Rational::zero())
        } else {
            Err(Error::Domain("zero raised to a negative power".into()))
        };
    }
    if base.is_one() {
        return Ok(Rational::one());
    }
    let q = exponent.denom();
    if !q.is_one() && base.is_negative() {
        return Err(Error::Domain(format!(
            "negative coefficient {base} raised to non-integer power {exponent}"
        )));
    }
    let root = if q.is_one() {
        base.clone()
    } else {
        let degree = q
            .to_u32()
            .ok_or_else(|| Error::Domain(format!("root degree {q} is too large")))?;
        let num = exact_root(base.numer(), degree);
        let den = exact_root(base.denom(), degree);
        match (num, den) {
            (Some(n), Some(d)) => Rational::new(n, d),
            _ => {
                return Err(Error::Domain(format!(
                    "{base}^({exponent}) is irrational"
                )))
            }
        }
    };
    let p = exponent
        .numer()
        .to_i32()
        .filter(|p| p.unsigned_abs() <= 1 << 16)
        .ok_or_else(|| {
            Error::Domain(format!(
                "exponent {exponent} is too large for an exact coefficient power of {base}"
            ))
        })?;
    Ok(num_traits::Pow::pow(&root, p))
}

fn exact_root(n: &BigInt, degree: u32) -> Option<BigInt> {
    let r = n.nth_root(degree);
    if num_traits::Pow::pow(&r, degree) == *n {
        Some(r)
    } else {
        None
    }
}
