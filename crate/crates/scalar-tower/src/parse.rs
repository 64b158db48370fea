//! Parser for the textual scalar grammar: rationals, `sqrt2`, `I`, `+ - * /`
//! and parentheses. Accepts everything the `Display` impls produce.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::traits::Field;
use crate::{GaussQuad, QuadExt, Rational, ScalarError};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> ScalarError {
        ScalarError::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GaussQuad, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GaussQuad, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div(&d).ok_or(ScalarError::DivisionByZero)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GaussQuad, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let n: BigInt = txt.parse().map_err(|_| self.err("bad integer"))?;
                Ok(GaussQuad::from_rational(&Rational::from_integer(n)))
            }
            _ => {
                if self.eat("sqrt2") {
                    Ok(GaussQuad::real(QuadExt::sqrt2()))
                } else if self.eat("I") || self.eat("i") {
                    Ok(GaussQuad::i())
                } else {
                    Err(self.err("unexpected token"))
                }
            }
        }
    }
}

pub fn parse_gauss(text: &str) -> Result<GaussQuad, ScalarError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn parse_quad(text: &str) -> Result<QuadExt, ScalarError> {
    let g = parse_gauss(text)?;
    if !g.im.is_zero() {
        return Err(ScalarError::Parse(format!("expected a real value, got {text}")));
    }
    Ok(g.re)
}

pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let q = parse_quad(text)?;
    if !q.b.is_zero() {
        return Err(ScalarError::Parse(format!("expected a rational value, got {text}")));
    }
    Ok(q.a)
}
