//! Integer polynomials in one variable and the finite-difference derivative.
//!
//! ```text
//! expr  <- term (('+' / '-') term)*
//! term  <- unary (('*')? unary)*
//! unary <- '-' unary / power
//! power <- atom ('^' uint)?
//! atom  <- uint / 'x' / '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Exponents above this are rejected at evaluation time.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntExpr {
    Const(BigInt),
    X,
    Neg(Box<IntExpr>),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
    Pow(Box<IntExpr>, u32),
}

impl IntExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser::new(src);
        p.skip_ws();
        let e = p.expr()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected {c:?}")));
        }
        Ok(e)
    }

    pub fn eval(&self, x: &BigInt) -> Result<BigInt> {
        Ok(match self {
            IntExpr::Const(c) => c.clone(),
            IntExpr::X => x.clone(),
            IntExpr::Neg(e) => -e.eval(x)?,
            IntExpr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            IntExpr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            IntExpr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            IntExpr::Pow(e, k) => {
                if *k > MAX_EXPONENT {
                    return Err(Error::DomainError(format!("exponent {k} exceeds {MAX_EXPONENT}")));
                }
                num_traits::pow::pow(e.eval(x)?, *k as usize)
            }
        })
    }
}

impl fmt::Display for IntExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntExpr::Const(c) => write!(f, "{c}"),
            IntExpr::X => write!(f, "x"),
            IntExpr::Neg(e) => write!(f, "-({e})"),
            IntExpr::Add(a, b) => write!(f, "({a} + {b})"),
            IntExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            IntExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            IntExpr::Pow(e, k) => write!(f, "({e})^{k}"),
        }
    }
}

/// `f(x + δ) − f(x)`.
pub fn finite_difference(f: &IntExpr, x: &BigInt, delta: &BigInt) -> Result<BigInt> {
    Ok(f.eval(&(x + delta))? - f.eval(x)?)
}

/// `(x, f(x + δ) − f(x))` for every `x` in `lo..=hi`.
pub fn difference_table(f: &IntExpr, lo: &BigInt, hi: &BigInt, delta: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        out.push((x.clone(), finite_difference(f, &x, delta)?));
        x += BigInt::one();
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { chars: src.chars().collect(), pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: String) -> Error {
        let (line, column) = line_col(self.src, self.pos);
        Error::Parse { line, column, message }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<IntExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = IntExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = IntExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<IntExpr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = IntExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                continue;
            }
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == 'x' || c == '(' => {
                    lhs = IntExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<IntExpr> {
        if self.eat('-') {
            return Ok(IntExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<IntExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected an exponent".into()));
            }
            let k = digits.parse::<u32>().map_err(|_| {
                let (line, column) = line_col(self.src, start);
                Error::Parse { line, column, message: format!("exponent {digits} is too large") }
            })?;
            return Ok(IntExpr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<IntExpr> {
        self.skip_ws();
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(IntExpr::X)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'".into()));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(IntExpr::Const(d.parse().expect("digits form an integer")))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

/// 1-based line and column of a character offset.
pub(crate) fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut column = 1;
    for c in src.chars().take(pos) {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    (line, column)
}
