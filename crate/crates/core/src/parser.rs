//! Recursive-descent parser for the monomial mini-language.
//!
//! ```text
//! expr     := mul
//! mul      := pow (('*' | '/') pow)*
//! pow      := atom ('^' exponent)?
//! exponent := '-'? integer | '(' '-'? integer ('/' integer)? ')'
//! atom     := 'x' | rat | 'u' | 'log' '(' expr ')' | 'exp' '(' sum ')' | '(' expr ')'
//! sum      := '-'? mul (('+' | '-') mul)*
//! rat      := integer ('/' integer)?
//! ```
//!
//! Expressions are evaluated to canonical monomials while parsing, so every
//! error carries the span of the subexpression that broke a constraint.

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{ParseError, ParseErrorKind};
use crate::monomial::{ExpPart, Expression, Frame, GrowthMonomial};
use crate::rational::Rational;

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    LParen,
    RParen,
    Star,
    Slash,
    Caret,
    Plus,
    Minus,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Range<usize>,
}

fn grammar(span: Range<usize>, msg: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Grammar, span, msg)
}

fn lex(input: &str) -> PResult<Vec<Token>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = simple {
            i += 1;
            out.push(Token { tok, span: start..i });
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                let mut end = i + 1;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                return Err(grammar(
                    start..end,
                    "decimal literals are not supported; write an exact fraction such as 3/2",
                ));
            }
            let n: BigInt = input[start..i].parse().expect("ascii digits");
            out.push(Token { tok: Tok::Num(n), span: start..i });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(input[start..i].to_string()),
                span: start..i,
            });
        } else {
            let ch = input[start..].chars().next().expect("non-empty");
            return Err(grammar(
                start..start + ch.len_utf8(),
                format!("unexpected character `{ch}`"),
            ));
        }
    }
    out.push(Token { tok: Tok::Eof, span: input.len()..input.len() });
    Ok(out)
}

struct Node {
    value: GrowthMonomial,
    span: Range<usize>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    frame: Frame,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Range<usize> {
        self.toks[self.pos].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(grammar(self.span(), format!("expected {what}, found {}", self.describe())))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Num(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    /// Skips to the `)` closing the current group; returns the end of the
    /// last token before it.
    fn skip_to_close(&mut self) -> usize {
        let mut depth = 0usize;
        let mut end = self.span().start;
        loop {
            match self.peek() {
                Tok::Eof => return end,
                Tok::RParen if depth == 0 => return end,
                Tok::RParen => depth -= 1,
                Tok::LParen => depth += 1,
                _ => {}
            }
            end = self.bump().span.end;
        }
    }

    fn top(&mut self) -> PResult<Node> {
        let node = self.mul()?;
        match self.peek() {
            Tok::Eof => Ok(node),
            Tok::Plus | Tok::Minus => Err(grammar(
                self.span(),
                "sums are only allowed inside exp(...); a growth monomial is a single product",
            )),
            _ => Err(grammar(self.span(), format!("unexpected {}", self.describe()))),
        }
    }

    fn mul(&mut self) -> PResult<Node> {
        let mut acc = self.pow()?;
        loop {
            let divide = match self.peek() {
                Tok::Star => false,
                Tok::Slash => true,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.pow()?;
            let value = if divide {
                acc.value.divide(&rhs.value)
            } else {
                acc.value.multiply(&rhs.value)
            };
            acc = Node {
                value,
                span: acc.span.start..rhs.span.end,
            };
        }
    }

    fn pow(&mut self) -> PResult<Node> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (r, end) = self.exponent()?;
        let span = base.span.start..end;
        let value = base.value.power(&r).map_err(|e| {
            ParseError::new(ParseErrorKind::Domain, span.clone(), e.to_string())
        })?;
        Ok(Node { value, span })
    }

    fn signed_int(&mut self) -> PResult<(BigInt, usize)> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(n) => {
                let end = self.bump().span.end;
                Ok((if neg { -n } else { n }, end))
            }
            _ => Err(grammar(
                self.span(),
                format!("expected an integer exponent, found {}", self.describe()),
            )),
        }
    }

    fn exponent(&mut self) -> PResult<(Rational, usize)> {
        if *self.peek() != Tok::LParen {
            let (n, end) = self.signed_int()?;
            return Ok((Rational::from_integer(n), end));
        }
        self.bump();
        let (n, _) = self.signed_int()?;
        let mut d = BigInt::one();
        if *self.peek() == Tok::Slash {
            self.bump();
            let at = self.span();
            match self.peek().clone() {
                Tok::Num(v) if !v.is_zero() => {
                    self.bump();
                    d = v;
                }
                Tok::Num(_) => {
                    return Err(ParseError::new(ParseErrorKind::Domain, at, "zero denominator"))
                }
                _ => {
                    return Err(grammar(
                        at,
                        format!("expected a positive integer denominator, found {}", self.describe()),
                    ))
                }
            }
        }
        let close = self.expect(Tok::RParen, "`)` closing the exponent")?;
        Ok((Rational::new(n, d), close.span.end))
    }

    fn atom(&mut self) -> PResult<Node> {
        let tok = self.toks[self.pos].clone();
        match tok.tok {
            Tok::Num(n) => {
                self.bump();
                let mut span = tok.span.clone();
                let mut value = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    if let Tok::Num(d) = self.peek_at(1).clone() {
                        self.bump();
                        let dt = self.bump();
                        span.end = dt.span.end;
                        if d.is_zero() {
                            return Err(ParseError::new(ParseErrorKind::Domain, span, "division by zero"));
                        }
                        value /= Rational::from_integer(d);
                    }
                }
                if value.is_zero() {
                    return Err(ParseError::new(
                        ParseErrorKind::Domain,
                        span,
                        "zero is not a growth monomial",
                    ));
                }
                Ok(Node {
                    value: GrowthMonomial::constant(value).expect("nonzero"),
                    span,
                })
            }
            Tok::Ident(name) => self.named(&name, tok.span),
            Tok::LParen => {
                self.bump();
                let inner = self.mul()?;
                if matches!(self.peek(), Tok::Plus | Tok::Minus) {
                    return Err(grammar(
                        self.span(),
                        "sums are only allowed inside exp(...)",
                    ));
                }
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok(Node {
                    value: inner.value,
                    span: tok.span.start..close.span.end,
                })
            }
            Tok::Minus => Err(grammar(
                tok.span,
                "unary minus is only allowed inside exp(...)",
            )),
            _ => Err(grammar(tok.span, format!("expected an operand, found {}", self.describe()))),
        }
    }

    fn named(&mut self, name: &str, span: Range<usize>) -> PResult<Node> {
        match name {
            "x" => {
                self.bump();
                let pow = match self.frame {
                    Frame::Infinity => Rational::one(),
                    Frame::ZeroPlus => -Rational::one(),
                };
                Ok(Node { value: GrowthMonomial::power_of_t(pow), span })
            }
            "u" => {
                if self.frame != Frame::ZeroPlus {
                    return Err(ParseError::new(
                        ParseErrorKind::Domain,
                        span,
                        "`u` stands for log(1/x) and is only defined at 0+; use log(x) at inf",
                    ));
                }
                self.bump();
                Ok(Node {
                    value: GrowthMonomial::iterated_log(1, Rational::one()),
                    span,
                })
            }
            "log" => {
                self.bump();
                self.expect(Tok::LParen, "`(` after log")?;
                let arg = self.mul()?;
                if matches!(self.peek(), Tok::Plus | Tok::Minus) {
                    let end = self.skip_to_close();
                    return Err(grammar(
                        arg.span.start..end,
                        "log of a sum is not a growth monomial",
                    ));
                }
                let close = self.expect(Tok::RParen, "`)` closing log")?;
                let value = self.log_of(&arg)?;
                Ok(Node { value, span: span.start..close.span.end })
            }
            "exp" => {
                self.bump();
                self.expect(Tok::LParen, "`(` after exp")?;
                let value = self.exp_sum()?;
                let close = self.expect(Tok::RParen, "`)` closing exp")?;
                Ok(Node { value, span: span.start..close.span.end })
            }
            other => Err(grammar(
                span,
                format!("unknown name `{other}`; expected x, u, log or exp"),
            )),
        }
    }

    fn log_of(&self, arg: &Node) -> PResult<GrowthMonomial> {
        let v = &arg.value;
        let plain = v.coeff().is_one() && v.exp_part().is_empty();
        if plain && v.pow_exp().is_one() && v.log_exps().is_empty() {
            return Ok(GrowthMonomial::iterated_log(1, Rational::one()));
        }
        if plain && v.pow_exp().is_zero() {
            if let Some((last, rest)) = v.log_exps().split_last() {
                if last.is_one() && rest.iter().all(Zero::is_zero) {
                    return Ok(GrowthMonomial::iterated_log(
                        v.log_exps().len() + 1,
                        Rational::one(),
                    ));
                }
            }
        }
        if plain && *v.pow_exp() == -Rational::one() && v.log_exps().is_empty() {
            let msg = match self.frame {
                Frame::ZeroPlus => "log(x) is negative near 0+; write log(1/x) or u",
                Frame::Infinity => "log(1/x) is negative as x grows; write log(x)",
            };
            return Err(ParseError::new(ParseErrorKind::Domain, arg.span.clone(), msg));
        }
        let expected = match self.frame {
            Frame::Infinity => "x",
            Frame::ZeroPlus => "1/x",
        };
        Err(grammar(
            arg.span.clone(),
            format!("log argument must be {expected} or an iterated log such as log({expected})"),
        ))
    }

    fn exp_sum(&mut self) -> PResult<GrowthMonomial> {
        let mut exp_terms = ExpPart::empty();
        let mut extra = GrowthMonomial::one();
        let mut negative = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negative = true;
        }
        loop {
            let term = self.mul()?;
            let coeff = if negative {
                -term.value.coeff()
            } else {
                term.value.coeff().clone()
            };
            self.exp_term(&term, coeff, &mut exp_terms, &mut extra)?;
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        let e = GrowthMonomial::from_parts(Rational::one(), exp_terms, Rational::zero(), vec![]);
        Ok(e.multiply(&extra))
    }

    /// Classifies one summand of an exp argument.
    fn exp_term(
        &self,
        term: &Node,
        coeff: Rational,
        exp_terms: &mut ExpPart,
        extra: &mut GrowthMonomial,
    ) -> PResult<()> {
        let v = &term.value;
        let span = term.span.clone();
        if !v.exp_part().is_empty() {
            return Err(ParseError::new(
                ParseErrorKind::UnsupportedOrder,
                span,
                "nested exponentials are outside the monomial class",
            ));
        }
        if v.is_constant() {
            return Err(grammar(
                span,
                "exp of a constant introduces an irrational factor; only growing terms are allowed",
            ));
        }
        if v.log_exps().is_empty() {
            if v.pow_exp().is_positive() {
                *exp_terms = exp_terms.add(
                    &ExpPart::single(v.pow_exp().clone(), coeff).expect("positive power"),
                );
                return Ok(());
            }
            return Err(grammar(
                span,
                "exp argument terms must tend to infinity (α·x^β with β > 0 at inf, α/x^β at 0+)",
            ));
        }
        // exp(q·L_k) is a power of L_(k-1), with L_0 = t.
        if v.pow_exp().is_zero() {
            if let Some((last, rest)) = v.log_exps().split_last() {
                if last.is_one() && rest.iter().all(Zero::is_zero) {
                    let k = v.log_exps().len();
                    let factor = if k == 1 {
                        GrowthMonomial::power_of_t(coeff)
                    } else {
                        GrowthMonomial::iterated_log(k - 1, coeff)
                    };
                    *extra = extra.multiply(&factor);
                    return Ok(());
                }
            }
        }
        Err(ParseError::new(
            ParseErrorKind::UnsupportedOrder,
            span,
            "exp of a log power lies between the power and exponential orders and is not representable",
        ))
    }
}

/// Parses `input` as a growth monomial in `frame`.
pub fn parse(input: &str, frame: Frame) -> Result<Expression, ParseError> {
    let toks = lex(input)?;
    if toks.len() == 1 {
        return Err(grammar(0..input.len(), "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, frame };
    let node = p.top()?;
    Ok(Expression::new(frame, node.value))
}

/// Parses an exact rational literal such as `3`, `-2` or `1/2`.
pub fn parse_rational(input: &str) -> Result<Rational, ParseError> {
    let s = input.trim();
    let bad = || grammar(0..input.len(), format!("`{input}` is not a rational such as 3 or 1/2"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    if num.contains('.') || den.contains('.') {
        return Err(grammar(0..input.len(), "decimal literals are not supported; write an exact fraction"));
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if !d.is_positive() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}
