//! Exact coefficient fields: the rationals and prime fields of word size.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A coefficient field. Prime fields are restricted to `p < 2^31` so that
/// products fit in a `u64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// A field element. Elements carry no reference to their field; every
/// operation goes through [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::zero()),
            Field::Prime(_) => Coeff::P(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::P(n.rem_euclid(*p as i64) as u64),
        }
    }

    /// Embeds a rational number; fails in characteristic `p` when the
    /// denominator vanishes mod `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Coeff> {
        match self {
            Field::Rational => Ok(Coeff::Q(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = q.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let d = q.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::InvalidInput(format!(
                        "denominator of {q} vanishes in characteristic {p}"
                    )));
                }
                Ok(Coeff::P(n * pow_mod(d, p - 2, *p) % p))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_zero(),
            Coeff::P(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_one(),
            Coeff::P(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (Field::Prime(p), Coeff::P(x), Coeff::P(y)) => Coeff::P((x + y) % p),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rational, Coeff::Q(x)) => Coeff::Q(-x),
            (Field::Prime(p), Coeff::P(x)) => Coeff::P((p - x) % p),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (Field::Prime(p), Coeff::P(x), Coeff::P(y)) => Coeff::P(x * y % p),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (Field::Rational, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (Field::Prime(p), Coeff::P(x)) => Coeff::P(pow_mod(*x, p - 2, *p)),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    pub fn is_negative(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_negative(),
            Coeff::P(_) => false,
        }
    }

    pub fn fmt_coeff(&self, a: &Coeff) -> String {
        match a {
            Coeff::Q(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::P(v) => v.to_string(),
        }
    }

    /// Scalar making a list of coefficients "normalized": for the rationals
    /// it clears denominators and divides by the content of the numerators
    /// (sign chosen so that the first coefficient is positive); for prime
    /// fields it is the inverse of the first coefficient.
    pub fn normalizer<'a>(&self, coeffs: impl Iterator<Item = &'a Coeff> + Clone) -> Coeff {
        match self {
            Field::Rational => {
                let mut lcm = BigInt::one();
                let mut first_negative = None;
                for c in coeffs.clone() {
                    if let Coeff::Q(q) = c {
                        lcm = lcm.lcm(q.denom());
                        if first_negative.is_none() {
                            first_negative = Some(q.is_negative());
                        }
                    }
                }
                let mut g = BigInt::zero();
                for c in coeffs {
                    if let Coeff::Q(q) = c {
                        let n = q.numer() * (&lcm / q.denom());
                        g = g.gcd(&n);
                    }
                }
                if g.is_zero() {
                    return self.one();
                }
                let mut s = BigRational::new(lcm, g);
                if first_negative == Some(true) {
                    s = -s;
                }
                Coeff::Q(s)
            }
            Field::Prime(_) => {
                let mut it = coeffs;
                match it.next() {
                    Some(c) => self.inv(c),
                    None => self.one(),
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime((1 << 31) + 11).is_err());
    }

    #[test]
    fn prime_inverse() {
        let f = Field::prime(7).unwrap();
        for a in 1..7 {
            let c = f.from_i64(a);
            assert!(f.is_one(&f.mul(&c, &f.inv(&c))));
        }
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), Coeff::P(4));
    }

    #[test]
    fn rational_normalizer_gives_primitive_integers() {
        let f = Field::Rational;
        let cs = [Coeff::Q(BigRational::new((-2).into(), 3.into())),
            Coeff::Q(BigRational::new(4.into(), 9.into()))];
        let s = f.normalizer(cs.iter());
        let scaled: Vec<_> = cs.iter().map(|c| f.fmt_coeff(&f.mul(c, &s))).collect();
        assert_eq!(scaled, vec!["3", "-2"]);
    }
}
