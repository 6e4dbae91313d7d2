//! Pretty-printing in the surface syntax accepted by the parser.
//!
//! At `0+` the internal `t = 1/x` value is rendered back in terms of `x`,
//! `u = log(1/x)` and `exp(α/x^β)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::monomial::{Expression, Frame, GrowthMonomial};
use crate::order::compare_order;
use crate::rational::Rational;
use crate::sum::MonomialSum;

fn power_factor(base: &str, e: &Rational) -> String {
    if e.is_one() {
        base.to_string()
    } else if e.is_integer() {
        format!("{base}^{e}")
    } else {
        format!("{base}^({e})")
    }
}

fn log_base(frame: Frame, level: usize) -> String {
    let (mut s, rest) = match frame {
        Frame::Infinity => ("x".to_string(), level),
        Frame::ZeroPlus => ("u".to_string(), level - 1),
    };
    for _ in 0..rest {
        s = format!("log({s})");
    }
    s
}

fn product(coeff: &Rational, num: Vec<String>, den: Vec<String>) -> String {
    let sign = if coeff.is_negative() { "-" } else { "" };
    let p = coeff.numer().abs();
    let q = coeff.denom();
    let mut num_items = Vec::new();
    if !p.is_one() || num.is_empty() {
        num_items.push(p.to_string());
    }
    num_items.extend(num);
    let mut den_items = Vec::new();
    if !q.is_one() {
        den_items.push(q.to_string());
    }
    den_items.extend(den);
    let mut out = format!("{sign}{}", num_items.join("*"));
    match den_items.len() {
        0 => {}
        1 => {
            out.push('/');
            out.push_str(&den_items[0]);
        }
        _ => {
            out.push_str("/(");
            out.push_str(&den_items.join("*"));
            out.push(')');
        }
    }
    out
}

fn split_power(base: &str, e: &Rational, num: &mut Vec<String>, den: &mut Vec<String>) {
    if e.is_positive() {
        num.push(power_factor(base, e));
    } else if e.is_negative() {
        den.push(power_factor(base, &-e));
    }
}

fn exp_argument(m: &GrowthMonomial, frame: Frame) -> String {
    let mut out = String::new();
    for (i, (beta, alpha)) in m.exp_part().iter().rev().enumerate() {
        let term = GrowthMonomial::power_of_t(beta.clone())
            .with_coeff(alpha.abs())
            .expect("nonzero alpha");
        let body = render(&term, frame);
        match (i, alpha.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push('-'),
            (_, false) => out.push('+'),
        }
        out.push_str(&body);
    }
    out
}

/// Renders a monomial in `frame`'s surface syntax.
pub fn render(m: &GrowthMonomial, frame: Frame) -> String {
    let mut num = Vec::new();
    let mut den = Vec::new();
    if !m.exp_part().is_empty() {
        num.push(format!("exp({})", exp_argument(m, frame)));
    }
    let x_exp = match frame {
        Frame::Infinity => m.pow_exp().clone(),
        Frame::ZeroPlus => -m.pow_exp(),
    };
    split_power("x", &x_exp, &mut num, &mut den);
    for (j, a) in m.log_exps().iter().enumerate() {
        if !a.is_zero() {
            split_power(&log_base(frame, j + 1), a, &mut num, &mut den);
        }
    }
    product(m.coeff(), num, den)
}

/// Renders a sum with its dominant term first.
pub fn render_sum(s: &MonomialSum, frame: Frame) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<&GrowthMonomial> = s.terms().iter().collect();
    terms.sort_by(|a, b| compare_order(b, a).ordering());
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(&render(t, frame));
        } else if t.coeff().is_negative() {
            out.push_str(" - ");
            out.push_str(&render(&t.neg(), frame));
        } else {
            out.push_str(" + ");
            out.push_str(&render(t, frame));
        }
    }
    out
}

impl fmt::Display for GrowthMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.value, self.frame))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mono(c: Rational, exp: Vec<(Rational, Rational)>, p: Rational, logs: Vec<Rational>) -> GrowthMonomial {
        GrowthMonomial::canonicalize(c, exp, p, logs).unwrap()
    }

    #[test]
    fn infinity_rendering() {
        let m = mono(int(1), vec![], int(-1), vec![int(2)]);
        assert_eq!(render(&m, Frame::Infinity), "log(x)^2/x");
        let m = mono(int(1), vec![(int(1), int(2))], int(-3), vec![]);
        assert_eq!(render(&m, Frame::Infinity), "exp(2*x)/x^3");
        let m = mono(rat(1, 1000), vec![], rat(1, 1000), vec![]);
        assert_eq!(render(&m, Frame::Infinity), "x^(1/1000)/1000");
        let m = mono(int(-1), vec![], int(-1), vec![int(-2)]);
        assert_eq!(render(&m, Frame::Infinity), "-1/(x*log(x)^2)");
        let m = mono(int(1), vec![], int(0), vec![int(0), int(0), int(1)]);
        assert_eq!(render(&m, Frame::Infinity), "log(log(log(x)))");
        assert_eq!(render(&GrowthMonomial::constant(rat(3, 4)).unwrap(), Frame::Infinity), "3/4");
    }

    #[test]
    fn zero_plus_rendering() {
        let m = mono(int(1), vec![(int(1), int(-1))], int(0), vec![]);
        assert_eq!(render(&m, Frame::ZeroPlus), "exp(-1/x)");
        let m = mono(rat(1, 2), vec![], int(-2), vec![]);
        assert_eq!(render(&m, Frame::ZeroPlus), "x^2/2");
        let m = mono(int(1), vec![(int(2), rat(-1, 2))], int(3), vec![]);
        assert_eq!(render(&m, Frame::ZeroPlus), "exp(-1/(2*x^2))/x^3");
        let m = mono(int(1), vec![], int(-2), vec![int(1), int(-1)]);
        assert_eq!(render(&m, Frame::ZeroPlus), "x^2*u/log(u)");
    }

    #[test]
    fn sum_dominant_first() {
        let a = mono(int(2), vec![], int(-1), vec![int(1)]);
        let b = mono(int(-3), vec![], int(-1), vec![]);
        let s = MonomialSum::from_terms([b, a]);
        assert_eq!(render_sum(&s, Frame::ZeroPlus), "2*x*u - 3*x");
        assert_eq!(render_sum(&MonomialSum::zero(), Frame::Infinity), "0");
    }
}
