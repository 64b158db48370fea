//! Parser for element expressions such as `(f1+f2)*(f3+f4)` or `2 - 3*e{1,4}/2`.

use num_bigint::BigInt;
use scalar_tower::{Field, Rational};

use crate::{CliffordAlg, CliffordElem, CliffordError};

/// `names` maps identifiers to 0-based generator indices; `consts` resolves
/// any other identifier to a scalar (e.g. `sqrt2`).
pub fn parse_elem<F: Field>(
    alg: &CliffordAlg<F>,
    text: &str,
    names: &[(&str, usize)],
    consts: &dyn Fn(&str) -> Option<F>,
) -> Result<CliffordElem<F>, CliffordError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, alg, names, consts };
    let e = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a, F> {
    s: &'a [u8],
    pos: usize,
    alg: &'a CliffordAlg<F>,
    names: &'a [(&'a str, usize)],
    consts: &'a dyn Fn(&str) -> Option<F>,
}

impl<F: Field> Parser<'_, F> {
    fn err(&self, m: &str) -> CliffordError {
        CliffordError::Parse(format!("{m} at byte {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CliffordElem<F>, CliffordError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CliffordElem<F>, CliffordError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = if c == b'*' {
                self.alg.mul(&acc, &f)?
            } else {
                let d = f.coeff(0);
                if f.terms().any(|(m, _)| *m != 0) {
                    return Err(self.err("division by a non-scalar"));
                }
                let inv = d.inv().ok_or_else(|| self.err("division by zero"))?;
                acc.scale(&inv)
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CliffordElem<F>, CliffordError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<CliffordElem<F>, CliffordError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let n: BigInt = txt.parse().map_err(|_| self.err("bad integer"))?;
                Ok(self.alg.scalar(F::from_rational(&Rational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let id = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if id == "e" && self.peek() == Some(b'{') {
                    return self.mono_literal();
                }
                if let Some((_, g)) = self.names.iter().find(|(n, _)| *n == id) {
                    if *g >= self.alg.n() {
                        return Err(self.err("generator out of range"));
                    }
                    return Ok(self.alg.gen(*g));
                }
                if let Some(c) = (self.consts)(id) {
                    return Ok(self.alg.scalar(c));
                }
                Err(self.err(&format!("unknown identifier '{id}'")))
            }
            _ => Err(self.err("unexpected input")),
        }
    }

    // e{i,j,...} with 1-based strictly increasing indices, or e{} for 1.
    fn mono_literal(&mut self) -> Result<CliffordElem<F>, CliffordError> {
        self.pos += 1;
        let close = self.s[self.pos..].iter().position(|&c| c == b'}').ok_or_else(|| self.err("expected '}'"))?;
        let body = std::str::from_utf8(&self.s[self.pos..self.pos + close]).unwrap().trim().to_string();
        self.pos += close + 1;
        let mut mask = 0u32;
        let mut last = 0usize;
        if !body.is_empty() {
            for part in body.split(',') {
                let i: usize = part.trim().parse().map_err(|_| self.err("bad monomial index"))?;
                if i == 0 || i > self.alg.n() || i <= last {
                    return Err(self.err("monomial indices must be increasing and in range"));
                }
                last = i;
                mask |= 1 << (i - 1);
            }
        }
        Ok(self.alg.mono(mask))
    }
}
