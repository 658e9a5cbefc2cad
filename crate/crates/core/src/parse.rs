//! Text grammar for polynomials: `3/2*x^2*y - z`, with parentheses and
//! explicit `*`. Unknown variables are rejected with their byte offset.

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};
use num_bigint::BigInt;
use std::sync::Arc;

pub fn parse_polynomial(ring: &Arc<PolyRing>, input: &str) -> Result<Polynomial> {
    let mut p = Parser { ring, input: input.as_bytes(), pos: 0 };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

/// Comma-separated list of polynomials, e.g. the `--pool` CLI flag.
pub fn parse_polynomial_list(ring: &Arc<PolyRing>, input: &str) -> Result<Vec<Polynomial>> {
    input
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| parse_polynomial(ring, s))
        .collect()
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    let t = self.term()?;
                    acc = acc.checked_add(&t)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    let t = self.term()?;
                    acc = acc.checked_sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'-') => {
                    negate = !negate;
                    self.pos += 1;
                }
                Some(b'+') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                let f = self.factor()?;
                acc = acc.checked_mul(&f)?;
            } else {
                break;
            }
        }
        Ok(if negate { acc.negate() } else { acc })
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            if e > 10_000 {
                return Err(self.err("exponent too large"));
            }
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.variable(),
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Polynomial> {
        let num = self.bigint()?;
        let den = {
            // a '/' introduces a literal fraction only when followed by digits
            let save = self.pos;
            let mut probe = self.pos;
            while probe < self.input.len() && self.input[probe].is_ascii_whitespace() {
                probe += 1;
            }
            if self.input.get(probe) == Some(&b'/')
                && self
                    .input
                    .get(probe + 1)
                    .is_some_and(|c| c.is_ascii_digit() || c.is_ascii_whitespace())
            {
                self.pos = probe + 1;
                self.skip_ws();
                self.bigint()?
            } else {
                self.pos = save;
                BigInt::from(1)
            }
        };
        let c = self.ring.field().from_fraction(&num, &den).map_err(|e| match e {
            Error::Invalid(m) => self.err(m),
            other => other,
        })?;
        Ok(Polynomial::constant(self.ring, c))
    }

    fn bigint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an exponent"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse::<u32>()
            .map_err(|_| self.err("exponent out of range"))
    }

    fn variable(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        while self.pos < self.input.len()
            && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        match self.ring.var_index(name) {
            Some(i) => Ok(Polynomial::var(self.ring, i)),
            None => {
                self.pos = start;
                Err(self.err(format!("unknown variable {name:?}")))
            }
        }
    }
}
