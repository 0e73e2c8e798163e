//! Polynomial expressions: tokenizer, recursive-descent parser and printer.
//!
//! Precedence from tightest to loosest: `^`, unary `-`, `*`, then `+`/`-`.
//! Binary operators are left-associative. Rational literals such as `3/2`
//! are single tokens; there is no division operator.

use std::fmt;
use std::sync::Arc;

use grassgeo_core::{MultiPoly, Ring, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Var(String),
    /// Nonnegative rational constant; negation is a separate node.
    Const(BigRational),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
    Neg(Box<PolyExpr>),
}

/// A syntax error with the byte offset of the offending token.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
    pub input: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = self.input[..self.position.min(self.input.len())]
            .chars()
            .count();
        writeln!(f, "{} at column {}", self.message, col + 1)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(col))
    }
}

/// Accepted identifiers: `x<i>`, `t<i>` and `p<i>(_<j>)*`.
pub fn is_valid_identifier(name: &str) -> bool {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if let Some(rest) = name.strip_prefix('x').or_else(|| name.strip_prefix('t')) {
        return digits(rest);
    }
    if let Some(rest) = name.strip_prefix('p') {
        return rest.split('_').all(digits);
    }
    false
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    input: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn err(&self, message: impl Into<String>, position: usize) -> ParseError {
        ParseError {
            message: message.into(),
            position,
            input: self.input.to_string(),
        }
    }

    fn run(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let bytes = self.input.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'+' => self.toks.push((Tok::Plus, start)),
                b'-' => self.toks.push((Tok::Minus, start)),
                b'*' => self.toks.push((Tok::Star, start)),
                b'^' => self.toks.push((Tok::Caret, start)),
                b'(' => self.toks.push((Tok::LParen, start)),
                b')' => self.toks.push((Tok::RParen, start)),
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let num: BigInt = self.input[start..i].parse().unwrap();
                    let mut den = BigInt::one();
                    if i < bytes.len() && bytes[i] == b'/' {
                        let ds = i + 1;
                        let mut j = ds;
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        if j == ds {
                            return Err(self.err("expected a denominator after '/'", i));
                        }
                        den = self.input[ds..j].parse().unwrap();
                        if den.is_zero() {
                            return Err(self.err("zero denominator", ds));
                        }
                        i = j;
                    }
                    self.toks
                        .push((Tok::Num(BigRational::new(num, den)), start));
                    continue;
                }
                c if c.is_ascii_alphabetic() => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    let name = &self.input[start..i];
                    if !is_valid_identifier(name) {
                        return Err(self.err(format!("unknown identifier '{name}'"), start));
                    }
                    self.toks.push((Tok::Ident(name.to_string()), start));
                    continue;
                }
                _ => {
                    let ch = self.input[start..].chars().next().unwrap();
                    return Err(self.err(format!("unexpected character '{ch}'"), start));
                }
            }
            i += 1;
        }
        self.toks.push((Tok::End, self.input.len()));
        Ok(self.toks)
    }
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>, position: usize) -> ParseError {
        ParseError {
            message: message.into(),
            position,
            input: self.input.to_string(),
        }
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PolyExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(PolyExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyExpr, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Tok::Num(q) if q.is_integer() => {
                    let e = q
                        .to_integer()
                        .to_u32()
                        .ok_or_else(|| self.err("exponent too large", at))?;
                    base = PolyExpr::Pow(Box::new(base), e);
                }
                Tok::Num(_) => return Err(self.err("exponent must be an integer", at)),
                Tok::Minus => return Err(self.err("negative exponent", at)),
                _ => return Err(self.err("expected a nonnegative integer exponent", at)),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyExpr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(q) => Ok(PolyExpr::Const(q)),
            Tok::Ident(name) => Ok(PolyExpr::Var(name)),
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("unbalanced parenthesis: expected ')'", self.offset()));
                }
                self.bump();
                Ok(inner)
            }
            Tok::RParen => Err(self.err("unbalanced parenthesis: unexpected ')'", at)),
            Tok::End => Err(self.err("unexpected end of input", at)),
            t => Err(self.err(format!("unexpected token {}", describe(&t)), at)),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::Num(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::End => "end of input",
    }
}

pub fn parse_poly(text: &str) -> Result<PolyExpr, ParseError> {
    let toks = Lexer {
        input: text,
        toks: Vec::new(),
    }
    .run()?;
    let mut p = Parser {
        input: text,
        toks,
        pos: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen => Err(p.err("unbalanced parenthesis: unexpected ')'", p.offset())),
        t => Err(p.err(format!("unexpected {}", describe(t)), p.offset())),
    }
}

impl PolyExpr {
    fn prec(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
            PolyExpr::Mul(..) => 2,
            PolyExpr::Neg(..) => 3,
            PolyExpr::Pow(..) => 4,
            PolyExpr::Var(_) | PolyExpr::Const(_) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Const(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(
                    f,
                    " {} ",
                    if matches!(self, PolyExpr::Add(..)) {
                        '+'
                    } else {
                        '-'
                    }
                )?;
                b.write_at(f, 2)
            }
            PolyExpr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            PolyExpr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            PolyExpr::Pow(a, e) => {
                // fractions as bases are parenthesized for readability
                match a.as_ref() {
                    PolyExpr::Const(q) if !q.is_integer() => {
                        write!(f, "(")?;
                        a.write_at(f, 0)?;
                        write!(f, ")")?;
                    }
                    _ => a.write_at(f, 4)?,
                }
                write!(f, "^{e}")
            }
        }
    }

    /// Evaluates the expression as a polynomial in `ring`.
    pub fn to_poly(&self, ring: &Arc<Ring>) -> Result<MultiPoly, String> {
        Ok(match self {
            PolyExpr::Var(v) => {
                let i = ring.var_index(v).ok_or_else(|| {
                    format!("variable {v} is not in the ring ({})", ring.vars.join(", "))
                })?;
                ring.var(i)
            }
            PolyExpr::Const(q) => {
                let s = Scalar::from_rational(ring.field, q).map_err(|e| e.to_string())?;
                ring.constant(s)
            }
            PolyExpr::Add(a, b) => a.to_poly(ring)?.add(&b.to_poly(ring)?),
            PolyExpr::Sub(a, b) => a.to_poly(ring)?.sub(&b.to_poly(ring)?),
            PolyExpr::Mul(a, b) => a.to_poly(ring)?.mul(&b.to_poly(ring)?),
            PolyExpr::Pow(a, e) => a.to_poly(ring)?.pow(*e),
            PolyExpr::Neg(a) => a.to_poly(ring)?.neg(),
        })
    }

    /// Names of the variables, in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            PolyExpr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            PolyExpr::Const(_) => {}
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) | PolyExpr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            PolyExpr::Pow(a, _) | PolyExpr::Neg(a) => a.collect_vars(out),
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Parses a polynomial directly into `ring`.
pub fn parse_in_ring(text: &str, ring: &Arc<Ring>) -> Result<MultiPoly, String> {
    parse_poly(text).map_err(|e| e.to_string())?.to_poly(ring)
}
