//! Polynomial expressions.
//!
//! ```text
//! expr    = ["+" | "-"] term { ("+" | "-") term }
//! term    = factor { ("*" | "/") factor }      (divisors must be nonzero constants)
//! factor  = unary [ "^" integer ]
//! unary   = "-" unary | atom
//! atom    = number | name | "(" expr ")"
//! number  = digits [ "/" digits ]
//! name    = letter { letter | digit | "_" } [ "[" digits { "," digits } "]" ]
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, Polynomial, RingSpec, Q};

pub fn parse_poly(text: &str, ring: &Arc<RingSpec>) -> Result<Polynomial<Q>, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<RingSpec>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Polynomial<Q>, PolyError> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<Q>, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = at;
                    return Err(self.err("division by a non-constant or zero"));
                }
                let c = d.constant_coeff().expect("nonzero constant").recip();
                acc = acc.scale(&c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<Q>, PolyError> {
        let base = self.unary()?;
        if self.eat(b'^') {
            if self.peek() == Some(b'-') {
                return Err(PolyError::NegativeExponent);
            }
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            if e == 0 {
                return Ok(Polynomial::one(self.ring));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Polynomial<Q>, PolyError> {
        if self.eat(b'-') {
            return Ok(self.unary_pow()?.neg());
        }
        self.atom()
    }

    /// Operand of a unary minus: a power, so `-x^2` negates `x^2`.
    fn unary_pow(&mut self) -> Result<Polynomial<Q>, PolyError> {
        self.factor()
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Polynomial<Q>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.ring, Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.name()?;
                Polynomial::var_named(self.ring, &name)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn name(&mut self) -> Result<String, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'[' {
            let close = self.src[self.pos..]
                .iter()
                .position(|&c| c == b']')
                .ok_or_else(|| self.err("unclosed '['"))?;
            self.pos += close + 1;
        }
        let raw = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
        let name: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        Ok(name)
    }
}

/// Parse a rational literal such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Q, PolyError> {
    let t = text.trim();
    let bad = || PolyError::Syntax {
        pos: 0,
        msg: format!("not a rational number: {t}"),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}
