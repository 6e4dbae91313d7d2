//! `gradus` command-line front end.
//!
//! [`run`] does all the work and reports through the given writers, so the
//! binary is a thin shell and tests can drive it in-process.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use gradus::{
    asymptotic_antiderivative, between, classify, compare_order, differentiate, dominant_term,
    parse, parse_rational, ratio_limit, rectangle_form, render, render_sum, replay_derivation,
    solve_area_equation, verify_antiderivative_numeric, verify_order_numeric, Compact,
    DerivationCase, Error, Expression, Frame, GrowthMonomial, NumericReport, ParseError, SampleGrid, Verdict,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

pub const GRAMMAR: &str = "\
EXPRESSIONS:
  expr     := mul
  mul      := pow (('*' | '/') pow)*
  pow      := atom ('^' exponent)?
  exponent := '-'? integer | '(' '-'? integer ('/' integer)? ')'
  atom     := 'x' | rational | 'u' | 'log' '(' expr ')' | 'exp' '(' sum ')' | '(' expr ')'
  sum      := '-'? mul (('+' | '-') mul)*

  '^' binds tighter than '*' and '/'; unary minus is allowed only inside exp().
  Fractional exponents need parentheses: x^(1/2). x^2/3 means (x^2)/3.
  log takes x or an iterated log at inf, 1/x (or u) at 0+.
  u = log(1/x) and is only available with --at 0+.

EXAMPLES:
  gradus compare \"log(x)\" \"x^(1/1000)\"
  gradus integrate \"x^-2 * exp(-1/x)\" --at 0+ --json
  gradus demo E507-21 --n 2";

#[derive(Debug, Parser)]
#[command(name = "gradus", version, about = "Exact algebra of growth orders", after_help = GRAMMAR)]
struct Cli {
    /// Limit point: inf (x → ∞) or 0+ (x → 0⁺)
    #[arg(long, global = true, default_value = "inf", value_parser = parse_frame)]
    at: Frame,
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    /// Smallest grid value of the frame variable (t at inf, x at 0+)
    #[arg(long, global = true)]
    grid_min: Option<f64>,
    /// Largest grid value of the frame variable
    #[arg(long, global = true)]
    grid_max: Option<f64>,
    /// Number of grid samples (at least 8)
    #[arg(long, global = true, default_value_t = 12, value_parser = parse_samples)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order relation between two expressions
    Compare { e1: String, e2: String },
    /// Limit of E1/E2
    Limit { e1: String, e2: String },
    /// Euler's class: powers, iterated logs or exponentials
    Classify { e: String },
    /// An expression strictly between two orders
    Between { e1: String, e2: String },
    /// Derivative with respect to x
    Diff { e: String },
    /// Asymptotic antiderivative near 0+
    Integrate { e: String },
    /// Integrand y with ∫y dx = C·x^S·y near 0+
    SolveArea { c: String, s: String },
    /// Numeric cross-check of the order relation
    VerifyOrder { e1: String, e2: String },
    /// Numeric cross-check of the antiderivative near 0+
    VerifyIntegral { e: String },
    /// Replay one of Euler's derivations (E507-9, E507-16, E507-21)
    Demo {
        case: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

fn parse_frame(s: &str) -> Result<Frame, String> {
    match s {
        "inf" => Ok(Frame::Infinity),
        "0+" => Ok(Frame::ZeroPlus),
        _ => Err(format!("expected inf or 0+, got {s:?}")),
    }
}

fn parse_samples(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 8 {
        return Err(format!("at least 8 samples are needed, got {n}"));
    }
    Ok(n)
}

enum Failure {
    Parse { input: String, err: ParseError },
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

/// What a subcommand produced: the same data as text and as JSON.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: EXIT_OK }
    }
}

struct Ctx {
    frame: Frame,
    grid_min: Option<f64>,
    grid_max: Option<f64>,
    samples: usize,
}

impl Ctx {
    fn expr(&self, input: &str) -> Result<Expression, Failure> {
        parse(input, self.frame).map_err(|err| Failure::Parse { input: input.to_string(), err })
    }

    fn render(&self, e: &Expression) -> String {
        render(&e.value, e.frame)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}\n{GRAMMAR}\n");
                    EXIT_USAGE
                }
            };
        }
    };
    let ctx = Ctx {
        frame: cli.at,
        grid_min: cli.grid_min,
        grid_max: cli.grid_max,
        samples: cli.samples,
    };
    match dispatch(&ctx, cli.command) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", o.json)
            } else {
                writeln!(out, "{}", o.text)
            };
            o.code
        }
        Err(f) => report_failure(f, cli.json, out, err),
    }
}

fn report_failure(f: Failure, as_json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (code, kind, span, text, message) = match &f {
        Failure::Parse { input, err } => (
            EXIT_USAGE,
            err.kind.code(),
            Some([err.span.start, err.span.end]),
            err.render(input),
            err.message.clone(),
        ),
        Failure::Math(e) => {
            let code = match e {
                Error::UnknownCase(_) | Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_MATH,
            };
            (code, e.code(), None, format!("error[{}]: {e}", e.code()), e.to_string())
        }
    };
    let _ = if as_json {
        let mut body = json!({ "kind": kind, "message": message });
        if let Some(span) = span {
            body["span"] = json!(span);
        }
        writeln!(out, "{}", json!({ "error": body }))
    } else {
        writeln!(err, "{text}")
    };
    code
}

fn dispatch(ctx: &Ctx, command: Command) -> Result<Output, Failure> {
    match command {
        Command::Compare { e1, e2 } => {
            let (a, b) = (ctx.expr(&e1)?, ctx.expr(&e2)?);
            let rel = compare_order(&a.value, &b.value);
            Ok(Output::ok(rel.to_string(), to_json(&rel)))
        }
        Command::Limit { e1, e2 } => {
            let (a, b) = (ctx.expr(&e1)?, ctx.expr(&e2)?);
            let lim = ratio_limit(&a.value, &b.value);
            Ok(Output::ok(lim.to_string(), to_json(&lim)))
        }
        Command::Classify { e } => {
            let class = classify(&ctx.expr(&e)?);
            Ok(Output::ok(class.to_string(), to_json(&class)))
        }
        Command::Between { e1, e2 } => {
            let (a, b) = (ctx.expr(&e1)?, ctx.expr(&e2)?);
            let mid = Expression::new(ctx.frame, between(&a.value, &b.value)?);
            let text = ctx.render(&mid);
            let json = json!({ "expression": text, "monomial": mid.value.notation() });
            Ok(Output::ok(text, json))
        }
        Command::Diff { e } => {
            let e = ctx.expr(&e)?;
            let d = differentiate(&e);
            let text = render_sum(&d, e.frame);
            let terms: Vec<String> = d.terms().iter().map(|t| render(t, e.frame)).collect();
            let dominant = dominant_term(&d).ok().map(|t| render(&t, e.frame));
            let json = json!({ "derivative": text, "terms": terms, "dominant": dominant });
            Ok(Output::ok(text, json))
        }
        Command::Integrate { e } => {
            let y = ctx.expr(&e)?;
            let r = asymptotic_antiderivative(&y)?;
            let f = render(&r.antiderivative, Frame::ZeroPlus);
            let mut text = format!("F = {f}\ncase {}, {}", r.case.label(), r.validity);
            match r.rectangle {
                Some(_) => {
                    let (s, c) = rectangle_form(&r, &y)?;
                    let factor = GrowthMonomial::power_of_t(-s).scale(&c)?;
                    text.push_str(&format!("\n∫y dx = {}·y", render(&factor, Frame::ZeroPlus)));
                }
                None => text.push_str("\nno rectangle form (F carries an extra log)"),
            }
            Ok(Output::ok(text, to_json(&r)))
        }
        Command::SolveArea { c, s } => {
            let parse_scalar = |input: &str| {
                parse_rational(input).map_err(|err| Failure::Parse { input: input.to_string(), err })
            };
            let (c, s) = (parse_scalar(&c)?, parse_scalar(&s)?);
            let y = solve_area_equation(&c, &s)?;
            let text = ctx.render(&y);
            let json = json!({
                "integrand": text,
                "monomial": y.value.notation(),
                "rectangle": { "s": Compact(&s), "const": Compact(&c) },
            });
            Ok(Output::ok(text, json))
        }
        Command::VerifyOrder { e1, e2 } => {
            let (a, b) = (ctx.expr(&e1)?, ctx.expr(&e2)?);
            let (min, max) = match ctx.frame {
                Frame::Infinity => (ctx.grid_min.unwrap_or(10.0), ctx.grid_max.unwrap_or(1e250)),
                Frame::ZeroPlus => (ctx.grid_min.unwrap_or(1e-250), ctx.grid_max.unwrap_or(0.1)),
            };
            let grid = SampleGrid::geometric(ctx.frame, min, max, ctx.samples)?
                .clamped(&[&a.value, &b.value])?;
            let report = verify_order_numeric(&a.value, &b.value, &grid);
            let relation = compare_order(&a.value, &b.value);
            let head = format!("predicted {relation}");
            let mut json = to_json(&report);
            json["predicted"] = to_json(&relation);
            Ok(numeric_output(head, &report, "t", json))
        }
        Command::VerifyIntegral { e } => {
            let y = ctx.expr(&e)?;
            let r = asymptotic_antiderivative(&y)?;
            let xs = SampleGrid::geometric(
                Frame::ZeroPlus,
                ctx.grid_min.unwrap_or(1e-6),
                ctx.grid_max.unwrap_or(0.2),
                ctx.samples,
            )?
            .points;
            let report = verify_antiderivative_numeric(&y, &r, &xs)?;
            let head = format!("F = {}", render(&r.antiderivative, Frame::ZeroPlus));
            let mut json = to_json(&report);
            json["antiderivative"] = to_json(&r);
            Ok(numeric_output(head, &report, "x", json))
        }
        Command::Demo { case, n } => {
            let report = replay_derivation(DerivationCase::from_id(&case, n)?)?;
            let code = if report.all_verified() { EXIT_OK } else { EXIT_FAIL };
            Ok(Output { text: report.transcript(), json: to_json(&report), code })
        }
    }
}

fn numeric_output(head: String, report: &NumericReport, var: &str, json: Value) -> Output {
    let mut text = format!("{}\n{head}\n{}", report.verdict.name(), report.criterion);
    // The antiderivative check pairs each sample with a quadrature error.
    let paired = var == "x" && report.errors.len() == report.samples.len();
    for (i, (s, d)) in report.samples.iter().enumerate() {
        text.push_str(&format!("\n  {var} = {s:<12.6e} Δ = {d:<13.6e}"));
        if paired {
            text.push_str(&format!(" quadrature error = {:.3e}", report.errors[i]));
        }
    }
    let code = match report.verdict {
        Verdict::Fail => EXIT_FAIL,
        Verdict::Pass | Verdict::Inconclusive => EXIT_OK,
    };
    Output { text, json, code }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("gradus").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn report(verdict: Verdict) -> NumericReport {
        NumericReport {
            verdict,
            criterion: String::new(),
            samples: vec![(1.0, 0.5)],
            errors: vec![],
        }
    }

    #[test]
    fn verdicts_map_to_exit_codes() {
        for (v, code) in [(Verdict::Pass, 0), (Verdict::Inconclusive, 0), (Verdict::Fail, 1)] {
            let o = numeric_output(String::new(), &report(v), "t", Value::Null);
            assert_eq!(o.code, code);
            assert!(o.text.starts_with(v.name()));
        }
    }

    #[test]
    fn in_process_run() {
        let (code, out, _) = run_str(&["compare", "exp(x)", "x^1000"]);
        assert_eq!((code, out.trim()), (0, "greater"));
        let (code, out, _) = run_str(&["--version"]);
        assert_eq!(code, 0);
        assert!(out.contains("gradus"));
        let (code, _, err) = run_str(&["diff"]);
        assert_eq!(code, 2);
        assert!(err.contains("EXPRESSIONS"));
    }

    #[test]
    fn frame_and_samples_flags() {
        assert_eq!(parse_frame("0+"), Ok(Frame::ZeroPlus));
        assert!(parse_frame("zero").is_err());
        assert_eq!(parse_samples("8"), Ok(8));
        assert!(parse_samples("7").is_err());
    }
}
