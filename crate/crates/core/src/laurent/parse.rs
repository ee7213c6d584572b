//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace ignored, juxtaposition multiplies):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' int)?
//! int    := ('+' | '-')? digits | '(' ('+' | '-')? digits ')'
//! atom   := digits | name | '(' expr ')'
//! ```
//!
//! `i` and `I` denote the imaginary unit unless they are variable names.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

const MAX_EXPONENT: i64 = 10_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Float,
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax { pos, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        match ch {
            c if c.is_whitespace() => k += 1,
            '0'..='9' | '.' => {
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                let is_float = k < chars.len() && chars[k].1 == '.';
                if is_float || ch == '.' {
                    k += 1;
                    while k < chars.len() && (chars[k].1.is_ascii_digit() || chars[k].1 == '.') {
                        k += 1;
                    }
                    out.push((Tok::Float, pos));
                } else {
                    let digits: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                    out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                    k += 1;
                }
                out.push((Tok::Name(chars[start..k].iter().map(|&(_, c)| c).collect()), pos));
            }
            _ => {
                let t = match ch {
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => return Err(syntax(pos, format!("unexpected character `{ch}`"))),
                };
                out.push((t, pos));
                k += 1;
            }
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: Vec<&'a str>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn dim(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let divisor = self.unary()?;
                    if divisor.is_zero() {
                        return Err(syntax(pos, "division by zero"));
                    }
                    let inv = divisor
                        .monomial_inverse()
                        .ok_or_else(|| syntax(pos, "division is only supported by a single term"))?;
                    acc = &acc * &inv;
                }
                Tok::Int(_) | Tok::Name(_) | Tok::LParen | Tok::Float => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPolynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentPolynomial> {
        let base_pos = self.pos();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        if base.is_zero() {
            return Err(syntax(base_pos, "zero raised to a negative power"));
        }
        let inv = base
            .monomial_inverse()
            .ok_or_else(|| syntax(base_pos, "negative powers are only supported for a single term"))?;
        Ok(inv.pow((-e) as u32))
    }

    fn exponent(&mut self) -> Result<i64> {
        let pos = self.pos();
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let mut sign = 1;
        loop {
            match self.peek() {
                Tok::Minus => {
                    sign = -sign;
                    self.bump();
                }
                Tok::Plus => {
                    self.bump();
                }
                _ => break,
            }
        }
        let value = match self.bump() {
            Tok::Int(n) => {
                n.to_i64().filter(|v| *v <= MAX_EXPONENT).ok_or_else(|| syntax(pos, "exponent is too large"))?
            }
            _ => return Err(Error::NonIntegerExponent { pos }),
        };
        if paren {
            match self.peek() {
                Tok::RParen => {
                    self.bump();
                }
                _ => return Err(Error::NonIntegerExponent { pos }),
            }
        }
        Ok(sign * value)
    }

    fn atom(&mut self) -> Result<LaurentPolynomial> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                Ok(LaurentPolynomial::constant(self.dim(), GaussianRational::real(BigRational::from_integer(n))))
            }
            Tok::Float => Err(syntax(pos, "floating-point literals are not accepted; write a rational such as 3/2")),
            Tok::Name(name) => {
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(LaurentPolynomial::variable(self.dim(), i))
                } else if name == "i" || name == "I" {
                    Ok(LaurentPolynomial::constant(self.dim(), GaussianRational::i()))
                } else {
                    Err(Error::UnknownVariable { name, pos })
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err(syntax(self.toks[self.at.saturating_sub(1)].1, "expected `)`")),
                }
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::RParen => "`)`",
        _ => "token",
    }
}

/// Parses `text` as a Laurent polynomial in the variables `vars`, in order.
///
/// Accepts `+ - * / ^ ( )`, juxtaposition, integer and rational literals,
/// the imaginary unit, and negative integer exponents (`x^-1`, `x^(-2)`).
/// Division and negative powers are restricted to single terms so the
/// result stays a Laurent polynomial.
pub fn parse<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<LaurentPolynomial> {
    let vars: Vec<&str> = vars.iter().map(AsRef::as_ref).collect();
    if vars.is_empty() {
        return Err(Error::Precondition("at least one variable is required".into()));
    }
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, vars };
    if *p.peek() == Tok::End {
        return Err(syntax(0, "empty expression"));
    }
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::RParen => Err(syntax(p.pos(), "unbalanced `)`")),
        Tok::Caret => Err(syntax(p.pos(), "chained `^` needs parentheses")),
        _ => Err(syntax(p.pos(), "unexpected token")),
    }
}

impl std::str::FromStr for LaurentPolynomial {
    type Err = Error;

    /// Parses with variables inferred from the text: `x, y, z` when only
    /// those (or a prefix of them) occur, otherwise `x1, x2, …`.
    fn from_str(s: &str) -> Result<Self> {
        let vars = infer_variables(s);
        parse(s, &vars)
    }
}

/// Variable order guessed from the names appearing in `text`.
///
/// Uses `x, y, z` (truncated to the highest one used) when only those names
/// occur, otherwise all names in lexicographic order; `i`/`I` are skipped.
pub fn infer_variables(text: &str) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_alphanumeric() || ch == '_' {
            // a leading digit belongs to a numeric literal
            if !(cur.is_empty() && ch.is_ascii_digit()) {
                cur.push(ch);
            }
        } else {
            if !cur.is_empty() && cur != "i" && cur != "I" && !names.contains(&cur) {
                names.push(cur.clone());
            }
            cur.clear();
        }
    }
    let xyz = ["x", "y", "z"];
    if names.iter().all(|n| xyz.contains(&n.as_str())) {
        let top = names.iter().filter_map(|n| xyz.iter().position(|v| v == n)).max().unwrap_or(0);
        return xyz[..=top].iter().map(|s| s.to_string()).collect();
    }
    names.sort();
    names
}
