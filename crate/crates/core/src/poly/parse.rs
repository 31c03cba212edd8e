//! Text and JSON input for rational polynomials.
//!
//! Accepted text is an arithmetic expression in `X` (or `x`) over rational
//! literals: `+ - * /`, `^` with a nonnegative integer exponent,
//! parentheses, and implicit multiplication such as `2X` or
//! `(X^2-2)(X-1)^2`. A string starting with `[` is read as a JSON array of
//! coefficients indexed by degree.

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Field, Rational};

pub fn parse_poly(text: &str) -> Result<Poly<Rational>> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let value: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        return crate::io::poly_from_json(&value);
    }
    let mut parser = Parser {
        chars: trimmed.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let p = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, what: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!(
            "{what} at offset {} in polynomial {text:?}",
            self.pos
        ))
    }

    fn expr(&mut self) -> Result<Poly<Rational>> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<Rational>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.degree() != Some(0) {
                        return Err(self.error("division by a non-constant or zero"));
                    }
                    acc = acc.scale(&d.coeff(0).inv_ref().unwrap());
                }
                Some(c) if c == '(' || c == 'X' || c == 'x' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<Rational>> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<Rational>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<Rational>> {
        match self.peek() {
            Some('X') | Some('x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                let value = parse_rational(&lit)?;
                if value.is_zero() {
                    return Ok(Poly::zero());
                }
                Ok(Poly::constant(value))
            }
            _ => Err(self.error("expected a number, X or '('")),
        }
    }
}
