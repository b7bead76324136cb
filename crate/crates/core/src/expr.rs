//! Plain-text expressions for ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' INT)*
//! atom   := INT | GEN | '(' expr ')'
//! GEN    := 'w' [ "'" ] '(' INT ',' INT ')'
//! ```
//!
//! Whitespace is insignificant and `*` is never implied. Precedence from
//! tightest: `^`, unary `-`, `*`, binary `+`/`-`. So `-w(1,2)^2` reads as
//! `-(w(1,2)^2)`.

use std::fmt;

use thiserror::Error;

use crate::error::Result;
use crate::ring::{make_generator, Element, Side};
use crate::space::SpaceSpec;

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Gen { i: u32, j: u32, primed: bool },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn gen(i: u32, j: u32, primed: bool) -> Expr {
        Expr::Gen { i, j, primed }
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized; re-parses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(c) if *c < 0 => write!(f, "(-{})", c.unsigned_abs()),
            Expr::Int(c) => write!(f, "{c}"),
            Expr::Gen { i, j, primed: false } => write!(f, "w({i},{j})"),
            Expr::Gen { i, j, primed: true } => write!(f, "w'({i},{j})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Pow(a, e) => write!(f, "({a})^{e}"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

type PResult<T> = std::result::Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse::<u64>().map_err(|_| SyntaxError {
            offset: start,
            message: "integer literal too large".into(),
        })
    }

    fn index(&mut self) -> PResult<u32> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let v = self.integer()?;
        if v == 0 || v > u32::MAX as u64 {
            return Err(SyntaxError { offset: start, message: "generator index must be a positive integer".into() });
        }
        Ok(v as u32)
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Expr> {
        if self.eat(b'-') {
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return self.err("expression nested too deeply");
            }
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let mut acc = self.atom()?;
        while self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| SyntaxError { offset: start, message: "exponent too large".into() })?;
            acc = Expr::Pow(Box::new(acc), e);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'w') => {
                self.pos += 1;
                let primed = self.eat(b'\'');
                self.expect(b'(')?;
                let i = self.index()?;
                self.expect(b',')?;
                let j = self.index()?;
                self.expect(b')')?;
                Ok(Expr::Gen { i, j, primed })
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let v = self.integer()?;
                let v = i64::try_from(v)
                    .map_err(|_| SyntaxError { offset: start, message: "integer literal too large".into() })?;
                Ok(Expr::Int(v))
            }
            Some(_) => self.err("expected integer, generator, '(' or '-'"),
            None => self.err("unexpected end of input, expected integer, generator, '(' or '-'"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("expected '+', '-', '*', '^' or end of input");
    }
    Ok(e)
}

/// Bottom-up evaluation into a normalized element of `spec`.
pub fn evaluate(ast: &Expr, spec: &SpaceSpec) -> Result<Element> {
    match ast {
        Expr::Int(c) => Ok(Element::constant(*spec, *c)),
        Expr::Gen { i, j, primed } => {
            make_generator(spec, *i, *j, if *primed { Side::Primed } else { Side::Unprimed })
        }
        Expr::Neg(a) => evaluate(a, spec)?.neg(),
        Expr::Add(a, b) => evaluate(a, spec)?.add(&evaluate(b, spec)?),
        Expr::Sub(a, b) => evaluate(a, spec)?.sub(&evaluate(b, spec)?),
        Expr::Mul(a, b) => evaluate(a, spec)?.multiply(&evaluate(b, spec)?),
        Expr::Pow(a, e) => evaluate(a, spec)?.pow(*e),
    }
}

/// `evaluate(parse(text))`.
pub fn eval_str(text: &str, spec: &SpaceSpec) -> Result<Element> {
    evaluate(&parse(text)?, spec)
}
