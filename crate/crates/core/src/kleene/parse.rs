//! Concrete syntax for Kleene polynomials.
//!
//! ```text
//! sum     <- product ('+' product)*
//! product <- postfix ('.'? postfix)*
//! postfix <- atom '*'*
//! atom    <- var / const / '(' sum ')'
//! var     <- 'x' / 'y' / 'x' [1-9][0-9]*
//! const   <- [0-9]+ / [A-Za-z_{∞][A-Za-z0-9_,}]*
//! ```
//!
//! `x` is `x1` and `y` is `x2`. Any other identifier is a constant, resolved
//! against an algebra when evaluated.

use crate::error::{Error, Result};
use crate::intpoly::line_col;

use super::poly::KleenePoly;

pub fn parse_poly(src: &str) -> Result<KleenePoly> {
    let mut p = Parser { src, chars: src.chars().collect(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected {c:?}")));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

fn starts_atom(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '(' || c == '{' || c == '∞'
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
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

    fn error(&self, message: String) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: String) -> Error {
        let (line, column) = line_col(self.src, pos);
        Error::Parse { line, column, message }
    }

    fn sum(&mut self) -> Result<KleenePoly> {
        let mut lhs = self.product()?;
        while self.eat('+') {
            lhs = KleenePoly::plus(lhs, self.product()?);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<KleenePoly> {
        let mut lhs = self.postfix()?;
        loop {
            if self.eat('.') {
                lhs = KleenePoly::times(lhs, self.postfix()?);
                continue;
            }
            self.skip_ws();
            match self.peek() {
                Some(c) if starts_atom(c) => lhs = KleenePoly::times(lhs, self.postfix()?),
                _ => return Ok(lhs),
            }
        }
    }

    fn postfix(&mut self) -> Result<KleenePoly> {
        let mut p = self.atom()?;
        while self.eat('*') {
            p = KleenePoly::star(p);
        }
        Ok(p)
    }

    fn atom(&mut self) -> Result<KleenePoly> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'".into()));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                Ok(KleenePoly::Lit(self.chars[start..self.pos].iter().collect()))
            }
            Some(c) if c.is_alphabetic() || c == '_' || c == '{' || c == '∞' => {
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == ',' || c == '}') {
                    self.pos += 1;
                }
                let word: String = self.chars[start..self.pos].iter().collect();
                self.word(start, word)
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn word(&self, start: usize, word: String) -> Result<KleenePoly> {
        match word.as_str() {
            "x" => return Ok(KleenePoly::Var(0)),
            "y" => return Ok(KleenePoly::Var(1)),
            _ => {}
        }
        if let Some(digits) = word.strip_prefix('x').filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
        {
            return match digits.parse::<usize>() {
                Ok(i) if i >= 1 && !digits.starts_with('0') => Ok(KleenePoly::Var(i - 1)),
                _ => Err(self.error_at(start, format!("bad variable `{word}`; variables are x1, x2, …"))),
            };
        }
        Ok(KleenePoly::Lit(word))
    }
}
