//! Log-space evaluation and numeric falsification of symbolic verdicts.
//!
//! Monomials are evaluated as `ln|M(t)|`, so factors like `exp(-1/x)` at
//! `x = 0.005` stay representable even where the linear value underflows.

use std::fmt;

use num_traits::Signed;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::calculus::{derivative_t, differentiate, dominant_term, AntiderivativeResult};
use crate::error::{Error, Result};
use crate::monomial::{Expression, Frame, GrowthMonomial};
use crate::order::{compare_order, OrderRelation};
use crate::quadrature::adaptive_simpson;
use crate::rational::{ln_abs, to_f64};

/// Largest exponential-part magnitude allowed on a grid.
pub const EXP_MAGNITUDE_LIMIT: f64 = 1e250;
/// Samples the trend criterion looks at.
pub const TREND_WINDOW: usize = 5;
pub const MIN_SAMPLES: usize = 8;
/// Tolerance for the structural-same criterion.
pub const SAME_TOLERANCE: f64 = 1e-9;
pub const QUADRATURE_REL_TOL: f64 = 1e-10;
pub const QUADRATURE_MAX_DEPTH: u32 = 60;
/// Agreement required between quadrature and an exact antiderivative.
pub const EXACT_AGREEMENT: f64 = 1e-8;
/// Largest `x` accepted by the antiderivative check.
pub const MAX_SAMPLE_X: f64 = 0.2;

/// `ln|M(t)|` and the sum of absolute values of its additive parts.
fn eval_parts(m: &GrowthMonomial, t: f64) -> Result<(f64, f64)> {
    if t.is_nan() || t <= 0.0 || t.is_infinite() {
        return Err(Error::Domain(format!("t = {t} is outside (0, ∞)")));
    }
    let ln_t = t.ln();
    let mut parts = vec![ln_abs(m.coeff())];
    for (beta, alpha) in m.exp_part().iter() {
        parts.push(to_f64(alpha) * (to_f64(beta) * ln_t).exp());
    }
    parts.push(to_f64(m.pow_exp()) * ln_t);
    let mut level = ln_t;
    for (j, a) in m.log_exps().iter().enumerate() {
        if j > 0 {
            level = level.ln();
        }
        if level.is_nan() || level <= 0.0 {
            return Err(Error::Domain(format!(
                "iterated log L{} is not positive at t = {t}",
                j + 1
            )));
        }
        parts.push(to_f64(a) * level.ln());
    }
    let value: f64 = parts.iter().sum();
    let scale: f64 = parts.iter().map(|p| p.abs()).sum();
    Ok((value, scale))
}

/// `ln|M(t)|` in double precision.
pub fn eval_log(m: &GrowthMonomial, t: f64) -> Result<f64> {
    eval_parts(m, t).map(|(v, _)| v)
}

/// `ln|e(x)|` at a frame-variable value `x`.
pub fn eval_log_at(e: &Expression, x: f64) -> Result<f64> {
    eval_log(&e.value, e.frame.t_of(x))
}

/// `ln|M(t)/M(t₀)|` as a function of `d = ln(t/t₀)`, without the
/// cancellation of subtracting two large logs.
struct LogRatio {
    /// `(β, α·t₀^β)` per exponential term.
    exp: Vec<(f64, f64)>,
    pow: f64,
    /// `(a_j, L_j(t₀))` per log level.
    logs: Vec<(f64, f64)>,
}

impl LogRatio {
    fn new(m: &GrowthMonomial, t0: f64) -> Result<Self> {
        eval_parts(m, t0)?;
        let ln_t0 = t0.ln();
        let exp = m
            .exp_part()
            .iter()
            .map(|(b, a)| (to_f64(b), to_f64(a) * (to_f64(b) * ln_t0).exp()))
            .collect();
        let mut level = ln_t0;
        let logs = m
            .log_exps()
            .iter()
            .enumerate()
            .map(|(j, a)| {
                if j > 0 {
                    level = level.ln();
                }
                (to_f64(a), level)
            })
            .collect();
        Ok(LogRatio { exp, pow: to_f64(m.pow_exp()), logs })
    }

    fn at(&self, d: f64) -> f64 {
        let mut v = self.pow * d;
        for (beta, scaled) in &self.exp {
            v += scaled * (beta * d).exp_m1();
        }
        // `delta` is L_j(t) − L_j(t₀), starting from L_1 = ln t.
        let mut delta = d;
        for (a, level) in &self.logs {
            delta = (delta / level).ln_1p();
            v += a * delta;
        }
        v
    }
}

/// Smallest `t` at which `L_1 … L_depth` are all positive.
fn domain_floor(depth: usize) -> Result<f64> {
    let mut tau: f64 = 1.0;
    for _ in 1..depth {
        tau = tau.exp();
    }
    if tau.is_finite() {
        Ok(tau)
    } else {
        Err(Error::Domain(format!("log depth {depth} exceeds double range")))
    }
}

/// Geometric sample points approaching the frame's limit point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub frame: Frame,
    /// Frame-variable values, ordered toward the limit point.
    pub points: Vec<f64>,
}

impl SampleGrid {
    /// `count` points geometrically spaced over `[min, max]` of the frame
    /// variable (`t` at inf, `x` at 0+).
    pub fn geometric(frame: Frame, min: f64, max: f64, count: usize) -> Result<Self> {
        if count < MIN_SAMPLES {
            return Err(Error::Precondition(format!(
                "a grid needs at least {MIN_SAMPLES} samples, got {count}"
            )));
        }
        if !(min > 0.0 && max > min && max.is_finite()) {
            return Err(Error::Domain(format!("invalid grid range [{min}, {max}]")));
        }
        let (lo, hi) = (min.ln(), max.ln());
        let mut points: Vec<f64> = (0..count)
            .map(|i| (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp())
            .collect();
        // Exact endpoints, so `max = 0.2` stays inside (0, 0.2].
        points[0] = min;
        points[count - 1] = max;
        if frame == Frame::ZeroPlus {
            points.reverse();
        }
        Ok(SampleGrid { frame, points })
    }

    /// Internal `t` values, increasing.
    pub fn ts(&self) -> Vec<f64> {
        self.points.iter().map(|&x| self.frame.t_of(x)).collect()
    }

    /// Shrinks the range so every iterated log of `monomials` is defined and
    /// every exponential part stays within [`EXP_MAGNITUDE_LIMIT`].
    pub fn clamped(&self, monomials: &[&GrowthMonomial]) -> Result<Self> {
        let ts = self.ts();
        let (mut lo, mut hi) = (ts[0].ln(), ts[ts.len() - 1].ln());
        let depth = monomials.iter().map(|m| m.log_exps().len()).max().unwrap_or(0);
        if depth > 0 {
            let floor = (2.0 * domain_floor(depth)?).ln();
            lo = lo.max(floor);
        }
        for m in monomials {
            if m.exp_part().is_empty() {
                continue;
            }
            let bound = |ln_t: f64| -> f64 {
                m.exp_part()
                    .iter()
                    .map(|(b, a)| to_f64(a).abs() * (to_f64(b) * ln_t).exp())
                    .sum()
            };
            if bound(lo) > EXP_MAGNITUDE_LIMIT {
                return Err(Error::Domain(
                    "exponential part exceeds the representable range at the start of the grid".into(),
                ));
            }
            if bound(hi) > EXP_MAGNITUDE_LIMIT {
                let (mut a, mut b) = (lo, hi);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if bound(mid) > EXP_MAGNITUDE_LIMIT {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                hi = a;
            }
        }
        if hi <= lo {
            return Err(Error::Domain("grid is empty after clamping".into()));
        }
        let count = self.points.len();
        let points = (0..count)
            .map(|i| {
                let t = (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp();
                self.frame.t_of(t)
            })
            .collect();
        Ok(SampleGrid { frame: self.frame, points })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericReport {
    pub verdict: Verdict,
    pub criterion: String,
    /// `(sample, Δ)` pairs: `(t, ln|M1/M2|)` for orders, `(x, F'/y - 1)` for
    /// antiderivatives.
    pub samples: Vec<(f64, f64)>,
    /// Measured errors or trend steps, depending on the check.
    pub errors: Vec<f64>,
}

fn inconclusive(criterion: String) -> NumericReport {
    NumericReport {
        verdict: Verdict::Inconclusive,
        criterion,
        samples: vec![],
        errors: vec![],
    }
}

/// Whether the leading term of `d/dt ln|q|` outweighs the rest at `t`, i.e.
/// the sampled trend already reflects the asymptotic one.
fn asymptotic_regime(q: &GrowthMonomial, t: f64) -> bool {
    let factors: Vec<GrowthMonomial> = derivative_t(q).terms().iter().map(|d| d.divide(q)).collect();
    let Ok(lead) = dominant_term(&factors.iter().cloned().collect()) else {
        return false;
    };
    let Ok(ln_lead) = eval_log(&lead, t) else {
        return false;
    };
    let others: Vec<f64> = factors
        .iter()
        .filter(|f| **f != lead)
        .filter_map(|f| eval_log(f, t).ok())
        .collect();
    if others.is_empty() {
        return true;
    }
    let top = others.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = top + others.iter().map(|v| (v - top).exp()).sum::<f64>().ln();
    ln_lead > lse
}

/// Samples `Δ(t) = ln|M1(t)| − ln|M2(t)|` and checks it against the symbolic
/// relation.
///
/// `Δ` is evaluated as `ln|M1/M2|` from the exact quotient, so identical
/// structure cancels before rounding.
pub fn verify_order_numeric(m1: &GrowthMonomial, m2: &GrowthMonomial, grid: &SampleGrid) -> NumericReport {
    let predicted = compare_order(m1, m2);
    let quotient = m1.divide(m2);
    let ts = grid.ts();
    let mut samples = Vec::with_capacity(ts.len());
    let mut resolution: f64 = 0.0;
    for &t in &ts {
        match eval_parts(&quotient, t) {
            Ok((d, scale)) => {
                samples.push((t, d));
                resolution = resolution.max(1e-12 * scale.max(1.0));
            }
            Err(e) => return inconclusive(format!("sample t = {t} unusable: {e}")),
        }
    }
    let deltas: Vec<f64> = samples.iter().map(|s| s.1).collect();

    if let OrderRelation::Same(r) = &predicted {
        let target = ln_abs(r);
        let errors: Vec<f64> = deltas.iter().map(|d| (d - target).abs()).collect();
        let ok = errors.iter().all(|e| *e < SAME_TOLERANCE);
        return NumericReport {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            criterion: format!("same order: |Δ(t) − ln({r})| < {SAME_TOLERANCE:e} at every sample"),
            samples,
            errors,
        };
    }

    let n = deltas.len();
    let tail = &deltas[n - TREND_WINDOW..];
    let steps: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let span = deltas[n - 1] - deltas[n / 2];
    let rising = steps.iter().all(|s| *s > resolution) && span > resolution;
    let falling = steps.iter().all(|s| *s < -resolution) && span < -resolution;
    let (agrees, contradicts, word) = match predicted {
        OrderRelation::Greater => (rising, falling, "increasing"),
        _ => (falling, rising, "decreasing"),
    };
    let verdict = if agrees {
        Verdict::Pass
    } else if contradicts && ts[n - TREND_WINDOW..].iter().all(|&t| asymptotic_regime(&quotient, t)) {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    NumericReport {
        verdict,
        criterion: format!(
            "{}: Δ strictly {word} over the last {TREND_WINDOW} samples and beyond the midpoint (resolution {resolution:.1e})",
            predicted.name()
        ),
        samples,
        errors: steps,
    }
}

/// Checks an antiderivative at `0⁺` by derivative ratios and by quadrature
/// over `[x/10, x]`.
pub fn verify_antiderivative_numeric(
    integrand: &Expression,
    r: &AntiderivativeResult,
    xs: &[f64],
) -> Result<NumericReport> {
    if integrand.frame != Frame::ZeroPlus {
        return Err(Error::Precondition("antiderivatives are checked at 0+".into()));
    }
    if xs.is_empty() {
        return Err(Error::Precondition("no sample points given".into()));
    }
    if let Some(bad) = xs.iter().find(|&&x| !(x > 0.0 && x <= MAX_SAMPLE_X)) {
        return Err(Error::Domain(format!("sample x = {bad} is outside (0, {MAX_SAMPLE_X}]")));
    }
    let mut xs = xs.to_vec();
    xs.sort_by(|a, b| b.partial_cmp(a).expect("finite"));

    let y = &integrand.value;
    let f = &r.antiderivative;
    let y_sign = if y.coeff().is_negative() { -1.0 } else { 1.0 };
    let f_sign = if f.coeff().is_negative() { -1.0 } else { 1.0 };
    // Every quantity is taken relative to y(x) through exact quotients.
    let df_over_y: Vec<GrowthMonomial> = differentiate(&Expression::at_zero(f.clone()))
        .terms()
        .iter()
        .map(|term| term.divide(y))
        .collect();
    let f_over_y = f.divide(y);

    let mut samples = Vec::with_capacity(xs.len());
    let mut errors = Vec::with_capacity(xs.len());
    for &x in &xs {
        let t = 1.0 / x;
        let mut ratio = 0.0;
        for q in &df_over_y {
            let s = if q.coeff().is_negative() { -1.0 } else { 1.0 };
            ratio += s * eval_log(q, t)?.exp();
        }
        samples.push((x, ratio - 1.0));

        // When y decays by a factor e within 1e5 ulps of x, rounding of the
        // quadrature nodes alone exceeds the agreement tolerance.
        let steepness: f64 = y
            .exp_part()
            .iter()
            .map(|(b, a)| (to_f64(a) * to_f64(b)).abs() * (to_f64(b) * t.ln()).exp())
            .sum();
        if steepness * f64::EPSILON > 1e-5 {
            errors.push(f64::NAN);
            continue;
        }
        let lo = x / 10.0;
        let y_rel = LogRatio::new(y, t)?;
        let scaled = |s: f64| -> f64 { y_sign * y_rel.at(((x - s) / s).ln_1p()).exp() };
        let area = adaptive_simpson(scaled, lo, x, QUADRATURE_REL_TOL, QUADRATURE_MAX_DEPTH);
        let f_x = eval_log(&f_over_y, t)?;
        let f_lo = f_x + LogRatio::new(f, t)?.at(10f64.ln());
        let f_diff = f_sign * (f_x.exp() - f_lo.exp());
        errors.push(((area - f_diff) / area).abs());
    }

    let resolved: Vec<(f64, f64)> = samples
        .iter()
        .zip(&errors)
        .filter(|(_, e)| !e.is_nan())
        .map(|(s, e)| (s.1.abs(), *e))
        .collect();
    let deviations: Vec<f64> = resolved.iter().map(|r| r.0).collect();
    let quad: Vec<f64> = resolved.iter().map(|r| r.1).collect();
    let skipped = samples.len() - resolved.len();
    let finite = deviations.iter().chain(&quad).all(|v| v.is_finite());
    let (ok, mut criterion) = if r.exact {
        (
            finite
                && deviations.iter().all(|d| *d <= 1e-9)
                && quad.iter().all(|e| *e <= EXACT_AGREEMENT),
            format!(
                "exact: F'/y = 1 and quadrature of y over [x/10, x] matches F(x) − F(x/10) within {EXACT_AGREEMENT:e} relative"
            ),
        )
    } else {
        // A deviation that has reached exactly zero has converged.
        let shrinking = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0] || w[1] == 0.0);
        (
            finite && shrinking(&deviations) && shrinking(&quad),
            format!(
                "asymptotic ({}): |F'/y − 1| and the quadrature discrepancy decrease as x → 0+",
                r.validity
            ),
        )
    };
    if skipped > 0 {
        criterion.push_str(&format!(
            "; {skipped} sample(s) below double resolution skipped"
        ));
    }
    let verdict = if !ok {
        Verdict::Fail
    } else if resolved.len() < 3 && skipped > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(NumericReport {
        verdict,
        criterion,
        samples,
        errors,
    })
}

impl Serialize for NumericReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("verdict", self.verdict.name())?;
        map.serialize_entry("criterion", &self.criterion)?;
        let samples: Vec<[f64; 2]> = self.samples.iter().map(|&(a, b)| [a, b]).collect();
        map.serialize_entry("samples", &samples)?;
        map.serialize_entry("errors", &self.errors)?;
        map.end()
    }
}
