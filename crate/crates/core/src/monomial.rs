//! Canonical log-exp growth monomials.
//!
//! A [`GrowthMonomial`] represents
//!
//! ```text
//! c · exp(Σ α·t^β) · t^a0 · (log t)^a1 · (log log t)^a2 · …
//! ```
//!
//! as `t → ∞`. Every field is an exact rational and the representation is
//! canonical: two monomials denote the same function iff they are `==`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// The exponent `E(t) = Σ α·t^β` of the exponential factor, keyed by `β > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpPart {
    terms: BTreeMap<Rational, Rational>,
}

impl ExpPart {
    pub fn empty() -> Self {
        ExpPart::default()
    }

    /// Builds an exponent from `(β, α)` pairs, summing repeated `β`s.
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut part = ExpPart::empty();
        for (beta, alpha) in terms {
            if !beta.is_positive() {
                return Err(Error::Domain(format!(
                    "exponential term has non-positive power {beta}"
                )));
            }
            part.add_term(beta, alpha);
        }
        Ok(part)
    }

    /// `α·t^β` alone.
    pub fn single(beta: Rational, alpha: Rational) -> Result<Self> {
        ExpPart::new([(beta, alpha)])
    }

    fn add_term(&mut self, beta: Rational, alpha: Rational) {
        let entry = self.terms.entry(beta).or_insert_with(Rational::zero);
        *entry += alpha;
        if entry.is_zero() {
            self.terms.retain(|_, a| !a.is_zero());
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(β, α)` in increasing `β`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    /// The term with the largest `β`, which governs the growth of `E`.
    pub fn leading(&self) -> Option<(&Rational, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &ExpPart) -> ExpPart {
        let mut out = self.clone();
        for (b, a) in &other.terms {
            out.add_term(b.clone(), a.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> ExpPart {
        if r.is_zero() {
            return ExpPart::empty();
        }
        ExpPart {
            terms: self
                .terms
                .iter()
                .map(|(b, a)| (b.clone(), a * r))
                .collect(),
        }
    }

    pub fn negate(&self) -> ExpPart {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &ExpPart) -> ExpPart {
        self.add(&other.negate())
    }
}

/// A canonical growth monomial in the internal `t → ∞` frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrowthMonomial {
    coeff: Rational,
    exp_part: ExpPart,
    pow_exp: Rational,
    log_exps: Vec<Rational>,
}

/// The coefficient-free part of a monomial; equal shapes are the same order.
pub type Shape<'a> = (&'a ExpPart, &'a Rational, &'a [Rational]);

impl GrowthMonomial {
    /// Canonicalizes raw fields: trims trailing zero log exponents and drops
    /// zero exponential terms. Rejects a zero coefficient.
    pub fn canonicalize<E>(
        coeff: Rational,
        exp_terms: E,
        pow_exp: Rational,
        log_exps: Vec<Rational>,
    ) -> Result<Self>
    where
        E: IntoIterator<Item = (Rational, Rational)>,
    {
        if coeff.is_zero() {
            return Err(Error::Domain("monomial coefficient is zero".into()));
        }
        Ok(GrowthMonomial::from_parts(
            coeff,
            ExpPart::new(exp_terms)?,
            pow_exp,
            log_exps,
        ))
    }

    pub(crate) fn from_parts(
        coeff: Rational,
        exp_part: ExpPart,
        pow_exp: Rational,
        mut log_exps: Vec<Rational>,
    ) -> Self {
        debug_assert!(!coeff.is_zero());
        while log_exps.last().is_some_and(Zero::is_zero) {
            log_exps.pop();
        }
        GrowthMonomial {
            coeff,
            exp_part,
            pow_exp,
            log_exps,
        }
    }

    pub fn one() -> Self {
        GrowthMonomial::constant(Rational::one()).expect("one is nonzero")
    }

    pub fn constant(c: Rational) -> Result<Self> {
        GrowthMonomial::canonicalize(c, [], Rational::zero(), vec![])
    }

    /// `t^r`.
    pub fn power_of_t(r: Rational) -> Self {
        GrowthMonomial::from_parts(Rational::one(), ExpPart::empty(), r, vec![])
    }

    /// `(L_level t)^r` where `L_1 = log`, `L_2 = log log`, …
    pub fn iterated_log(level: usize, r: Rational) -> Self {
        assert!(level >= 1, "iterated log levels start at 1");
        let mut logs = vec![Rational::zero(); level];
        logs[level - 1] = r;
        GrowthMonomial::from_parts(Rational::one(), ExpPart::empty(), Rational::zero(), logs)
    }

    /// `exp(α·t^β)`.
    pub fn exponential(beta: Rational, alpha: Rational) -> Result<Self> {
        Ok(GrowthMonomial::from_parts(
            Rational::one(),
            ExpPart::single(beta, alpha)?,
            Rational::zero(),
            vec![],
        ))
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn exp_part(&self) -> &ExpPart {
        &self.exp_part
    }

    pub fn pow_exp(&self) -> &Rational {
        &self.pow_exp
    }

    pub fn log_exps(&self) -> &[Rational] {
        &self.log_exps
    }

    /// Exponent of `L_level` (zero beyond the stored depth).
    pub fn log_exp(&self, level: usize) -> Rational {
        self.log_exps
            .get(level - 1)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn shape(&self) -> Shape<'_> {
        (&self.exp_part, &self.pow_exp, &self.log_exps)
    }

    pub fn is_constant(&self) -> bool {
        self.exp_part.is_empty() && self.pow_exp.is_zero() && self.log_exps.is_empty()
    }

    pub fn with_coeff(&self, coeff: Rational) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::Domain("monomial coefficient is zero".into()));
        }
        Ok(GrowthMonomial {
            coeff,
            ..self.clone()
        })
    }

    pub fn abs(&self) -> Self {
        GrowthMonomial {
            coeff: self.coeff.abs(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        GrowthMonomial {
            coeff: -&self.coeff,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        self.with_coeff(&self.coeff * c)
    }

    pub fn multiply(&self, other: &GrowthMonomial) -> GrowthMonomial {
        let depth = self.log_exps.len().max(other.log_exps.len());
        let logs = (1..=depth)
            .map(|j| self.log_exp(j) + other.log_exp(j))
            .collect();
        GrowthMonomial::from_parts(
            &self.coeff * &other.coeff,
            self.exp_part.add(&other.exp_part),
            &self.pow_exp + &other.pow_exp,
            logs,
        )
    }

    pub fn reciprocal(&self) -> GrowthMonomial {
        GrowthMonomial::from_parts(
            self.coeff.recip(),
            self.exp_part.negate(),
            -&self.pow_exp,
            self.log_exps.iter().map(|a| -a).collect(),
        )
    }

    /// `self / other`.
    pub fn divide(&self, other: &GrowthMonomial) -> GrowthMonomial {
        self.multiply(&other.reciprocal())
    }

    /// `self^r`; the coefficient power must be an exact rational.
    pub fn power(&self, r: &Rational) -> Result<GrowthMonomial> {
        let coeff = rational::pow(&self.coeff, r)?;
        Ok(GrowthMonomial::from_parts(
            coeff,
            self.exp_part.scale(r),
            &self.pow_exp * r,
            self.log_exps.iter().map(|a| a * r).collect(),
        ))
    }

    /// Bracket notation `[c; {β:α, …}; a0; (a1, a2, …)]`.
    pub fn notation(&self) -> String {
        let exp = self
            .exp_part
            .iter()
            .map(|(b, a)| format!("{b}:{a}"))
            .collect::<Vec<_>>()
            .join(", ");
        let logs = self
            .log_exps
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        format!("[{}; {{{exp}}}; {}; ({logs})]", self.coeff, self.pow_exp)
    }
}

/// The limit point of the frame variable `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    /// `x → ∞`; the internal variable is `t = x`.
    Infinity,
    /// `x → 0⁺`; the internal variable is `t = 1/x`.
    ZeroPlus,
}

impl Frame {
    pub fn flip(self) -> Frame {
        match self {
            Frame::Infinity => Frame::ZeroPlus,
            Frame::ZeroPlus => Frame::Infinity,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Frame::Infinity => "inf",
            Frame::ZeroPlus => "0+",
        }
    }

    /// Internal variable `t` for a frame value `x`.
    pub fn t_of(self, x: f64) -> f64 {
        match self {
            Frame::Infinity => x,
            Frame::ZeroPlus => 1.0 / x,
        }
    }
}

impl std::fmt::Display for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A user-facing monomial: a frame tag plus its internal-frame value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expression {
    pub frame: Frame,
    pub value: GrowthMonomial,
}

impl Expression {
    pub fn new(frame: Frame, value: GrowthMonomial) -> Self {
        Expression { frame, value }
    }

    pub fn at_infinity(value: GrowthMonomial) -> Self {
        Expression::new(Frame::Infinity, value)
    }

    pub fn at_zero(value: GrowthMonomial) -> Self {
        Expression::new(Frame::ZeroPlus, value)
    }

    /// The same function after `x ↦ 1/x`. The internal value already lives in
    /// the `t` frame, so only the tag moves; applying twice is the identity.
    pub fn substitute_reciprocal(&self) -> Expression {
        Expression::new(self.frame.flip(), self.value.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(c: i64, exp: &[(i64, i64)], p: Rational, logs: &[i64]) -> GrowthMonomial {
        GrowthMonomial::canonicalize(
            int(c),
            exp.iter().map(|&(b, a)| (int(b), int(a))),
            p,
            logs.iter().map(|&l| int(l)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn canonicalize_trims_and_drops() {
        let a = m(1, &[], int(2), &[0, 0]);
        assert!(a.log_exps().is_empty());
        assert_eq!(a.notation(), "[1; {}; 2; ()]");

        let b = m(3, &[(1, 0)], int(0), &[]);
        assert!(b.exp_part().is_empty());
        assert_eq!(b.notation(), "[3; {}; 0; ()]");

        let zero = GrowthMonomial::canonicalize(int(0), [], int(1), vec![]);
        assert!(matches!(zero, Err(Error::Domain(_))));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let a = m(5, &[(2, 3), (1, -1)], rat(1, 2), &[1, 0, 2, 0]);
        let again = GrowthMonomial::canonicalize(
            a.coeff().clone(),
            a.exp_part().iter().map(|(b, a)| (b.clone(), a.clone())),
            a.pow_exp().clone(),
            a.log_exps().to_vec(),
        )
        .unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn nonpositive_beta_rejected() {
        assert!(GrowthMonomial::exponential(int(0), int(1)).is_err());
        assert!(GrowthMonomial::exponential(int(-1), int(1)).is_err());
    }

    #[test]
    fn multiply_forms_power_times_log() {
        let alpha = rat(5, 2);
        let p = GrowthMonomial::power_of_t(alpha.clone());
        let l = GrowthMonomial::iterated_log(1, int(1));
        let prod = p.multiply(&l);
        assert_eq!(prod.pow_exp(), &alpha);
        assert_eq!(prod.log_exps(), &[int(1)]);
        assert_eq!(p.multiply(&GrowthMonomial::one()), p);
    }

    #[test]
    fn exponential_cancellation() {
        let a = m(2, &[(1, 1)], int(1), &[]);
        let b = m(3, &[(1, -1)], int(-1), &[]);
        assert_eq!(a.multiply(&b), GrowthMonomial::constant(int(6)).unwrap());
    }

    #[test]
    fn reciprocal_examples() {
        let x = GrowthMonomial::power_of_t(int(1));
        assert_eq!(x.reciprocal(), GrowthMonomial::power_of_t(int(-1)));
        let l2 = GrowthMonomial::iterated_log(1, int(2));
        assert_eq!(l2.reciprocal(), GrowthMonomial::iterated_log(1, int(-2)));
        let a = m(-7, &[(3, 2)], rat(1, 3), &[1, -4]);
        assert_eq!(a.reciprocal().reciprocal(), a);
        assert_eq!(a.multiply(&a.reciprocal()), GrowthMonomial::one());
    }

    #[test]
    fn power_examples() {
        let x = GrowthMonomial::power_of_t(int(1));
        assert_eq!(
            x.power(&rat(1, 1000)).unwrap(),
            GrowthMonomial::power_of_t(rat(1, 1000))
        );
        let a = m(-3, &[(1, 1)], int(2), &[1]);
        assert_eq!(a.power(&int(0)).unwrap(), GrowthMonomial::one());
        let neg = m(-2, &[], int(1), &[]);
        assert!(matches!(neg.power(&rat(1, 2)), Err(Error::Domain(_))));
        let two = m(2, &[], int(1), &[]);
        assert!(matches!(two.power(&rat(1, 2)), Err(Error::Domain(_))));
        let four = m(4, &[], int(1), &[]);
        assert_eq!(four.power(&rat(1, 2)).unwrap().coeff(), &int(2));
    }

    #[test]
    fn substitute_reciprocal_flips_frame() {
        let e = Expression::at_zero(m(1, &[], int(-2), &[1]));
        let flipped = e.substitute_reciprocal();
        assert_eq!(flipped.frame, Frame::Infinity);
        assert_eq!(flipped.value.notation(), "[1; {}; -2; (1)]");
        assert_eq!(flipped.substitute_reciprocal(), e);

        let decay = Expression::at_zero(GrowthMonomial::exponential(int(1), int(-1)).unwrap());
        assert_eq!(
            decay.substitute_reciprocal().value.notation(),
            "[1; {1:-1}; 0; ()]"
        );
    }
}
