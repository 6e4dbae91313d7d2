//! Exact algebra of growth orders.
//!
//! `gradus` represents functions of the form
//!
//! ```text
//! c · exp(Σ α·t^β) · t^a0 · (log t)^a1 · (log log t)^a2 · …
//! ```
//!
//! with exact rational fields, decides their order relations as `x → ∞` or
//! `x → 0⁺`, differentiates them, integrates them asymptotically near `0⁺`,
//! and cross-checks every verdict numerically in log-space.
//!
//! ```
//! use gradus::{compare_order, parse, Frame, OrderRelation};
//!
//! let log = parse("log(x)", Frame::Infinity).unwrap();
//! let root = parse("x^(1/1000)", Frame::Infinity).unwrap();
//! assert_eq!(compare_order(&log.value, &root.value), OrderRelation::Smaller);
//! ```

pub mod calculus;
pub mod derivation;
pub mod display;
pub mod error;
mod json;
pub mod monomial;
pub mod numeric;
pub mod order;
pub mod parser;
pub mod quadrature;
pub mod rational;
pub mod sum;

pub use calculus::{
    asymptotic_antiderivative, differentiate, dominant_term, lhopital_check, rectangle_form,
    solve_area_equation, AntiderivativeCase, AntiderivativeResult, LhopitalReport, Rectangle,
    Validity,
};
pub use derivation::{replay_derivation, DerivationCase, DerivationReport, DerivationStep};
pub use display::{render, render_sum};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use json::Compact;
pub use monomial::{ExpPart, Expression, Frame, GrowthMonomial};
pub use numeric::{
    eval_log, eval_log_at, verify_antiderivative_numeric, verify_order_numeric, NumericReport,
    SampleGrid, Verdict,
};
pub use order::{
    between, classify, compare_order, limit_of, ratio_limit, LimitValue, OrderClass,
    OrderRelation, Sign,
};
pub use parser::{parse, parse_rational};
pub use rational::{int, rat, Rational};
pub use sum::MonomialSum;
