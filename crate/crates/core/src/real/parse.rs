//! Recursive-descent parser for real-number expressions.
//!
//! ```text
//! expr    = term , { ( "+" | "-" ) , term } ;
//! term    = unary , { ( "*" | "/" ) , unary } ;
//! unary   = ( "+" | "-" ) , unary | atom ;
//! atom    = number | "pi" | "e" | sqrt | "(" , expr , ")" ;
//! sqrt    = "sqrt" , "(" , [ "-" ] , digits , ")" ;
//! number  = digits , [ "." , digits ] ;
//! digits  = digit , { digit } ;
//! ```
//!
//! Whitespace between tokens is ignored. Rationals and single-radicand surds
//! stay exact; `pi` and `e` make the result an interval.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Real, DEFAULT_PRECISION};
use crate::error::{Error, Result};

// extra bits carried while evaluating, dropped at the end
const GUARD_BITS: u32 = 32;

pub fn parse_real(text: &str) -> Result<Real> {
    parse_real_with_precision(text, DEFAULT_PRECISION)
}

pub fn parse_real_with_precision(text: &str, prec: u32) -> Result<Real> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        prec: prec + GUARD_BITS,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(match v {
        Real::Interval(iv) => Real::Interval(iv.with_prec(prec)),
        exact => exact,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    prec: u32,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Real> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Real> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Real> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.atom()
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn atom(&mut self) -> Result<Real> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                match self.ident() {
                    "pi" => Ok(Real::pi(self.prec)),
                    "e" => Ok(Real::e(self.prec)),
                    "sqrt" => self.sqrt(),
                    _ => {
                        self.pos = start;
                        Err(self.error("unknown identifier"))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn number(&mut self) -> Result<Real> {
        let int: BigInt = self.digits()?.parse().unwrap();
        if self.peek() != Some(b'.') {
            return Ok(Real::from(int));
        }
        self.pos += 1;
        let frac = self.digits()?.to_string();
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().unwrap();
        Ok(Real::Rational(BigRational::new(int * &scale + frac, scale)))
    }

    fn sqrt(&mut self) -> Result<Real> {
        self.expect(b'(')?;
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let mut n: BigInt = self.digits()?.parse().unwrap();
        if neg {
            n = -n;
        }
        self.expect(b')')?;
        if !n.is_positive() {
            return Err(Error::Domain(format!("sqrt of non-positive radicand {n}")));
        }
        let s = n.sqrt();
        if &s * &s == n {
            return Err(Error::Domain(format!(
                "sqrt({n}) is rational; write {s} instead"
            )));
        }
        Ok(super::QuadSurd::new(BigRational::zero(), BigRational::from_integer(1.into()), n)?.into())
    }
}
