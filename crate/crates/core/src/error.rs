use std::fmt;
use std::ops::Range;

use thiserror::Error;

/// Failures raised by the engine's operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("the two orders are the same; nothing lies strictly between them")]
    SameOrder,
    #[error("the sum is zero after merging like terms")]
    ZeroSum,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown derivation case `{0}`")]
    UnknownCase(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Machine-readable error code (`E_DOMAIN`, `E_SAME_ORDER`, ...).
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "E_DOMAIN",
            Error::SameOrder => "E_SAME_ORDER",
            Error::ZeroSum => "E_ZERO_SUM",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::UnknownCase(_) => "E_UNKNOWN_CASE",
            Error::Divergent(_) => "E_DIVERGENT",
            Error::Parse(e) => e.kind.code(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    /// Syntax error, or a `log`/`exp` argument outside the allowed shapes.
    Grammar,
    /// A well-formed expression whose order the monomial class cannot hold.
    UnsupportedOrder,
    /// A construct that is undefined in the chosen frame.
    Domain,
}

impl ParseErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            ParseErrorKind::Grammar => "E_GRAMMAR",
            ParseErrorKind::UnsupportedOrder => "E_UNSUPPORTED_ORDER",
            ParseErrorKind::Domain => "E_DOMAIN",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A parse failure with the byte span of the offending subexpression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {}..{}: {message}", span.start, span.end)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Range<usize>,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, span: Range<usize>, message: impl Into<String>) -> Self {
        ParseError {
            kind,
            span,
            message: message.into(),
        }
    }

    /// Renders the input with a caret line under the span.
    pub fn render(&self, input: &str) -> String {
        let start = input[..self.span.start.min(input.len())].chars().count();
        let width = input
            .get(self.span.clone())
            .map(|s| s.chars().count())
            .unwrap_or(0)
            .max(1);
        format!(
            "error[{}]: {}\n  {}\n  {}{}",
            self.kind,
            self.message,
            input,
            " ".repeat(start),
            "^".repeat(width)
        )
    }
}
