//! Replays of Euler's power-combination arguments.
//!
//! Each case writes `v = p/q`, applies L'Hôpital to get a second form of `v`,
//! then combines integer powers of the two forms to isolate a value for `v`.
//! Every intermediate monomial equality is re-checked canonically.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::calculus::{differentiate, dominant_term};
use crate::display::{render, render_sum};
use crate::error::{Error, Result};
use crate::monomial::{Expression, Frame, GrowthMonomial};
use crate::order::{limit_of, ratio_limit, LimitValue};
use crate::rational::{int, Rational};
use crate::sum::MonomialSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivationCase {
    /// `x^(1/n)/log x` at infinity.
    LogBelowRoot(u32),
    /// `e^x/x^n` at infinity.
    ExpAbovePower(u32),
    /// `x^n·u` at `0⁺`.
    PowerTimesLog(u32),
}

impl DerivationCase {
    pub const IDS: [&'static str; 3] = ["E507-9", "E507-16", "E507-21"];

    pub fn from_id(id: &str, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be a positive integer".into()));
        }
        match id.to_ascii_uppercase().as_str() {
            "E507-9" => Ok(DerivationCase::LogBelowRoot(n)),
            "E507-16" => Ok(DerivationCase::ExpAbovePower(n)),
            "E507-21" => Ok(DerivationCase::PowerTimesLog(n)),
            _ => Err(Error::UnknownCase(id.to_string())),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            DerivationCase::LogBelowRoot(_) => "E507-9",
            DerivationCase::ExpAbovePower(_) => "E507-16",
            DerivationCase::PowerTimesLog(_) => "E507-21",
        }
    }

    pub fn n(self) -> u32 {
        match self {
            DerivationCase::LogBelowRoot(n)
            | DerivationCase::ExpAbovePower(n)
            | DerivationCase::PowerTimesLog(n) => n,
        }
    }

    pub fn frame(self) -> Frame {
        match self {
            DerivationCase::PowerTimesLog(_) => Frame::ZeroPlus,
            _ => Frame::Infinity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub statement: String,
    /// What the engine computed.
    pub before: GrowthMonomial,
    /// The form written in the derivation.
    pub after: GrowthMonomial,
    pub justification: &'static str,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationReport {
    pub case: DerivationCase,
    pub p: GrowthMonomial,
    pub q: GrowthMonomial,
    pub dp: MonomialSum,
    pub dq: MonomialSum,
    /// `dominant(dp)/dominant(dq)`, the L'Hôpital form of `v`.
    pub dominant_ratio: GrowthMonomial,
    pub steps: Vec<DerivationStep>,
    pub final_v: GrowthMonomial,
    pub verdict: LimitValue,
    /// `ratio_limit(p, q)` computed directly.
    pub direct: LimitValue,
    pub note: Option<String>,
}

impl DerivationReport {
    pub fn all_verified(&self) -> bool {
        self.steps.iter().all(|s| s.verified)
    }

    pub fn frame(&self) -> Frame {
        self.case.frame()
    }

    /// Human-readable transcript; the last line states the final `v`.
    pub fn transcript(&self) -> String {
        let f = self.frame();
        let mut out = String::new();
        let _ = writeln!(out, "{} (n = {}) at {}", self.case.id(), self.case.n(), f);
        let _ = writeln!(out, "  p = {}, q = {}", render(&self.p, f), render(&self.q, f));
        let _ = writeln!(out, "  dp/dx = {}", render_sum(&self.dp, f));
        let _ = writeln!(out, "  dq/dx = {}", render_sum(&self.dq, f));
        for s in &self.steps {
            let mark = if s.verified { "ok" } else { "MISMATCH" };
            let _ = writeln!(
                out,
                "  [{}] {}: {} = {} ({mark})",
                s.justification,
                s.statement,
                render(&s.before, f),
                render(&s.after, f)
            );
        }
        if let Some(note) = &self.note {
            let _ = writeln!(out, "  note: {note}");
        }
        let _ = write!(out, "v = {} → {}", render(&self.final_v, f), self.verdict.name());
        out
    }
}

/// Builds a monomial from frame-variable exponents: `c·exp(…)·x^x_exp·Π L^logs`.
fn mono(frame: Frame, c: Rational, exp: Vec<(Rational, Rational)>, x_exp: Rational, logs: Vec<Rational>) -> GrowthMonomial {
    let pow = match frame {
        Frame::Infinity => x_exp,
        Frame::ZeroPlus => -x_exp,
    };
    GrowthMonomial::canonicalize(c, exp, pow, logs).expect("nonzero coefficient")
}

struct Builder {
    steps: Vec<DerivationStep>,
}

impl Builder {
    fn step(&mut self, statement: &str, before: GrowthMonomial, after: GrowthMonomial, justification: &'static str) -> GrowthMonomial {
        let verified = before == after;
        self.steps.push(DerivationStep {
            statement: statement.to_string(),
            before: before.clone(),
            after,
            justification,
            verified,
        });
        before
    }
}

pub fn replay_derivation(case: DerivationCase) -> Result<DerivationReport> {
    let n = case.n();
    if n == 0 {
        return Err(Error::Precondition("n must be a positive integer".into()));
    }
    let frame = case.frame();
    let nr = int(n as i64);
    let one = Rational::one;
    let zero = Rational::zero;
    let mut b = Builder { steps: Vec::new() };

    let (v0, p, q) = match case {
        DerivationCase::LogBelowRoot(_) => (
            mono(frame, one(), vec![], nr.recip(), vec![int(-1)]),
            mono(frame, one(), vec![], zero(), vec![int(-1)]),
            mono(frame, one(), vec![], -nr.recip(), vec![]),
        ),
        DerivationCase::ExpAbovePower(_) => (
            mono(frame, one(), vec![(one(), one())], -&nr, vec![]),
            mono(frame, one(), vec![], -&nr, vec![]),
            mono(frame, one(), vec![(one(), int(-1))], zero(), vec![]),
        ),
        DerivationCase::PowerTimesLog(_) => (
            mono(frame, one(), vec![], nr.clone(), vec![one()]),
            mono(frame, one(), vec![], nr.clone(), vec![]),
            mono(frame, one(), vec![], zero(), vec![int(-1)]),
        ),
    };
    b.step("v = p/q", p.divide(&q), v0.clone(), "quotient");

    let dp = differentiate(&Expression::new(frame, p.clone()));
    let dq = differentiate(&Expression::new(frame, q.clone()));
    let dp_lead = dominant_term(&dp)?;
    let dq_lead = dominant_term(&dq)?;

    let (stated_dp, stated_dq, stated_ratio) = match case {
        DerivationCase::LogBelowRoot(_) => (
            mono(frame, int(-1), vec![], int(-1), vec![int(-2)]),
            mono(frame, -nr.recip(), vec![], -nr.recip() - int(1), vec![]),
            mono(frame, nr.clone(), vec![], nr.recip(), vec![int(-2)]),
        ),
        DerivationCase::ExpAbovePower(_) => (
            mono(frame, -&nr, vec![], -&nr - int(1), vec![]),
            mono(frame, int(-1), vec![(one(), int(-1))], zero(), vec![]),
            mono(frame, nr.clone(), vec![(one(), one())], -&nr - int(1), vec![]),
        ),
        DerivationCase::PowerTimesLog(_) => (
            mono(frame, nr.clone(), vec![], &nr - int(1), vec![]),
            mono(frame, one(), vec![], int(-1), vec![int(-2)]),
            mono(frame, nr.clone(), vec![], nr.clone(), vec![int(2)]),
        ),
    };
    b.step("dp/dx", dp_lead.clone(), stated_dp, "derivative");
    b.step("dq/dx", dq_lead.clone(), stated_dq, "derivative");
    let ratio = b.step("v = dp/dq", dp_lead.divide(&dq_lead), stated_ratio, "lhopital");

    let (final_v, note) = match case {
        DerivationCase::LogBelowRoot(_) => {
            let vv = b.step(
                "vv from v = p/q",
                v0.power(&int(2))?,
                mono(frame, one(), vec![], int(2) / &nr, vec![int(-2)]),
                "square",
            );
            let v = b.step(
                "v = vv/(dp/dq)",
                vv.divide(&ratio),
                mono(frame, nr.recip(), vec![], nr.recip(), vec![]),
                "power-combination",
            );
            (
                v,
                Some(format!(
                    "the printed value n*x^(1/n) is off by a factor n^2; the corrected value {} is still infinite",
                    render(&mono(frame, nr.recip(), vec![], nr.recip(), vec![]), frame)
                )),
            )
        }
        DerivationCase::ExpAbovePower(_) => {
            let n1 = &nr + int(1);
            let hi = b.step(
                "v^(n+1) from v = p/q",
                v0.power(&n1)?,
                mono(frame, one(), vec![(one(), n1.clone())], -(&nr * &n1), vec![]),
                "power",
            );
            let nn = num_traits::Pow::pow(&nr, n);
            let lo = b.step(
                "v^n from v = dp/dq",
                ratio.power(&nr)?,
                mono(frame, nn.clone(), vec![(one(), nr.clone())], -(&nr * &n1), vec![]),
                "power",
            );
            let v = b.step(
                "v = v^(n+1)/v^n",
                hi.divide(&lo),
                mono(frame, nn.recip(), vec![(one(), one())], zero(), vec![]),
                "power-combination",
            );
            (v, Some("base a = e, so log a = 1".to_string()))
        }
        DerivationCase::PowerTimesLog(_) => {
            let vv = b.step(
                "vv from v = p/q",
                v0.power(&int(2))?,
                mono(frame, one(), vec![], int(2) * &nr, vec![int(2)]),
                "square",
            );
            let v = b.step(
                "v = vv/(dp/dq)",
                vv.divide(&ratio),
                mono(frame, nr.recip(), vec![], nr.clone(), vec![]),
                "power-combination",
            );
            (v, None)
        }
    };

    Ok(DerivationReport {
        case,
        verdict: limit_of(&final_v),
        direct: ratio_limit(&p, &q),
        p,
        q,
        dp,
        dq,
        dominant_ratio: ratio,
        steps: b.steps,
        final_v,
        note,
    })
}

struct StepJson<'a>(&'a DerivationStep, Frame);

impl Serialize for StepJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (step, f) = (self.0, self.1);
        let mut map = s.serialize_map(Some(5))?;
        map.serialize_entry("statement", &step.statement)?;
        map.serialize_entry("before", &render(&step.before, f))?;
        map.serialize_entry("after", &render(&step.after, f))?;
        map.serialize_entry("justification", step.justification)?;
        map.serialize_entry("verified", &step.verified)?;
        map.end()
    }
}

impl Serialize for DerivationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = self.frame();
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("case", self.case.id())?;
        map.serialize_entry("n", &self.case.n())?;
        map.serialize_entry("frame", f.name())?;
        map.serialize_entry("p", &render(&self.p, f))?;
        map.serialize_entry("q", &render(&self.q, f))?;
        map.serialize_entry("dp", &render_sum(&self.dp, f))?;
        map.serialize_entry("dq", &render_sum(&self.dq, f))?;
        map.serialize_entry("dominant_ratio", &render(&self.dominant_ratio, f))?;
        let steps: Vec<_> = self.steps.iter().map(|st| StepJson(st, f)).collect();
        map.serialize_entry("steps", &steps)?;
        map.serialize_entry("final", &render(&self.final_v, f))?;
        map.serialize_entry("verdict", &self.verdict)?;
        map.serialize_entry("direct", &self.direct)?;
        map.serialize_entry("note", &self.note)?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Sign;
    use crate::rational::rat;

    #[test]
    fn log_below_root_corrected_value() {
        let r = replay_derivation(DerivationCase::LogBelowRoot(1000)).unwrap();
        assert!(r.all_verified(), "{}", r.transcript());
        assert_eq!(r.final_v.notation(), "[1/1000; {}; 1/1000; ()]");
        assert_eq!(r.verdict, LimitValue::Infinite(Sign::Positive));
        assert_eq!(r.verdict, r.direct);
    }

    #[test]
    fn exp_above_power_base_e() {
        let r = replay_derivation(DerivationCase::ExpAbovePower(3)).unwrap();
        assert!(r.all_verified(), "{}", r.transcript());
        assert_eq!(r.final_v.coeff(), &rat(1, 27));
        assert_eq!(render(&r.final_v, Frame::Infinity), "exp(x)/27");
        assert_eq!(r.verdict, LimitValue::Infinite(Sign::Positive));
        assert_eq!(r.verdict, r.direct);
    }

    #[test]
    fn power_times_log_is_infinitesimal() {
        let r = replay_derivation(DerivationCase::PowerTimesLog(2)).unwrap();
        assert!(r.all_verified(), "{}", r.transcript());
        assert_eq!(render(&r.final_v, Frame::ZeroPlus), "x^2/2");
        assert_eq!(r.verdict, LimitValue::Zero);
        assert!(r.transcript().ends_with("v = x^2/2 → zero"));
    }

    #[test]
    fn unknown_case_and_zero_n() {
        assert_eq!(
            DerivationCase::from_id("E507-99", 2),
            Err(Error::UnknownCase("E507-99".into()))
        );
        assert!(matches!(DerivationCase::from_id("E507-9", 0), Err(Error::Precondition(_))));
        assert_eq!(DerivationCase::from_id("e507-16", 4), Ok(DerivationCase::ExpAbovePower(4)));
    }
}
