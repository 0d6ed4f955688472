//! Text syntax for polynomials: `3*x^2*y - 1/2*z`, with parentheses and
//! integer powers. Division is only allowed between integer literals.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        let s: String = self.chars.iter().collect();
        Err(Error::Parse(format!("{msg} at offset {} in `{s}`", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let e: u32 = (&n)
                .try_into()
                .map_err(|_| Error::Parse(format!("exponent {n} out of range")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut q = BigRational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return self.err("division by zero");
                    }
                    q /= BigRational::from_integer(d);
                }
                let c = self.ring.field.from_rational(&q)?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => self.err(&format!("unknown variable `{name}`")),
                }
            }
            _ => self.err("unexpected token"),
        }
    }
}

pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let mut p = Parser { ring, chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::Field;

    #[test]
    fn parses_and_prints_canonically() {
        let r = PolyRing::new(Field::Rational, &["x", "y", "z"]);
        let p = parse_polynomial(&r, " - z + 2*(x*y)^2 - x^2*y^2").unwrap();
        assert_eq!(p.to_string(), "x^2*y^2 - z");
        assert_eq!(parse_polynomial(&r, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        let r = PolyRing::new(Field::Rational, &["x"]);
        assert!(parse_polynomial(&r, "x +").is_err());
        assert!(parse_polynomial(&r, "w").is_err());
        assert!(parse_polynomial(&r, "1/0").is_err());
        assert!(parse_polynomial(&r, "x y").is_err());
    }
}
