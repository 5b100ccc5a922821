//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expression := ('+'|'-')? term (('+'|'-') term)*
//! term       := factor ('*' factor)*
//! factor     := coefficient | var ('^' posint)? | '(' expression ')' ('^' posint)?
//! var        := 'x' posint
//! coefficient:= integer ('/' posint)?
//! ```
//!
//! Whitespace is insignificant. Errors carry the byte offset of the
//! offending character.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
}

/// Parse `text` as a polynomial in `dim` variables `x1..x{dim}`.
pub fn parse(text: &str, dim: usize) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        dim,
    };
    p.skip_ws();
    let poly = p.expression()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.negate();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let idx_pos = self.pos;
                let idx = self.integer_raw()?;
                if idx < BigInt::from(1) || idx > BigInt::from(self.dim) {
                    return Err(ParseError {
                        pos: idx_pos,
                        msg: format!("variable index {idx} out of range 1..={}", self.dim),
                    });
                }
                let i: usize = idx.to_string().parse().unwrap();
                let base = Poly::var(self.dim, i - 1);
                self.power_of(base)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.power_of(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer_raw()?;
                let coeff = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den_pos = self.pos;
                    let den = self.integer_raw()?;
                    if den.is_zero() {
                        return Err(ParseError {
                            pos: den_pos,
                            msg: "zero denominator".to_string(),
                        });
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(Poly::constant(self.dim, coeff))
            }
            Some(c) => Err(self.err(&format!(
                "expected variable, number or '(' but found '{}'",
                c as char
            ))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn power_of(&mut self, base: Poly) -> Result<Poly, ParseError> {
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let exp_pos = self.pos;
            let e = self.integer_raw()?;
            if e < BigInt::from(1) {
                return Err(ParseError {
                    pos: exp_pos,
                    msg: "exponent must be a positive integer".to_string(),
                });
            }
            let e: u32 = e.to_string().parse().map_err(|_| ParseError {
                pos: exp_pos,
                msg: "exponent too large".to_string(),
            })?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer_raw(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }
}
