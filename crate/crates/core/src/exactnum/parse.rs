//! Text grammar for exact values.
//!
//! A value is a signed sum of terms. Each term is `RAT`, `RAT*sqrt(INT)` or
//! `sqrt(INT)`, where `RAT` is `INT` or `INT/INT`. Whitespace is ignored, so
//! `-1/2 + 3/4*sqrt(5)` and `-1/2+3/4*sqrt(5)` are the same value.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExactValue, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
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

    fn eat_str(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at position {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let den = self.digits()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn sqrt(&mut self) -> Result<ExactValue> {
        if !self.eat(b'(') {
            return Err(self.err("expected `(` after sqrt"));
        }
        if self.eat(b'-') {
            return Err(Error::NegativeRadicand(
                String::from_utf8_lossy(self.src).into_owned(),
            ));
        }
        let n = self.digits()?;
        if !self.eat(b')') {
            return Err(self.err("expected `)`"));
        }
        let n: u64 = n
            .try_into()
            .map_err(|_| self.err("radicand does not fit in 64 bits"))?;
        ExactValue::sqrt_of(n)
    }

    fn term(&mut self) -> Result<ExactValue> {
        if self.eat_str("sqrt") {
            return self.sqrt();
        }
        let coef = self.rational()?;
        if self.eat(b'*') {
            if !self.eat_str("sqrt") {
                return Err(self.err("expected sqrt after `*`"));
            }
            Ok(self.sqrt()?.scale(&coef))
        } else {
            Ok(ExactValue::from_rational(coef))
        }
    }
}

/// Parses a rational `INT` or `INT/INT` with optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let v: ExactValue = s.parse()?;
    v.to_rational()
        .ok_or_else(|| Error::NotRational(s.to_string()))
}

impl FromStr for ExactValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cur = Cursor {
            src: compact.as_bytes(),
            pos: 0,
        };
        if cur.src.is_empty() {
            return Err(Error::Parse("empty value".into()));
        }
        let mut acc = ExactValue::zero();
        let mut first = true;
        while cur.peek().is_some() {
            let sign = if cur.eat(b'-') {
                -Rational::one()
            } else if cur.eat(b'+') || first {
                Rational::one()
            } else {
                return Err(cur.err("expected `+` or `-`"));
            };
            first = false;
            let t = cur.term()?.scale(&sign);
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}
