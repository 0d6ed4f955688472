//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::{Coeff, Field};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// The ambient polynomial ring `k[x_1..x_n]` with a fixed monomial order and
/// optional positive integer weights for a grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub weights: Option<Vec<u32>>,
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str]) -> Arc<Self> {
        Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order: MonomialOrder::degrevlex(vars.len()),
            weights: None,
        })
    }

    /// Graded by `weights`, one positive weight per variable (checked when a
    /// presentation is built on it).
    pub fn weighted(field: Field, vars: &[&str], weights: &[u32]) -> Arc<Self> {
        let mut ring = (*Self::new(field, vars)).clone();
        ring.weights = Some(weights.to_vec());
        Arc::new(ring)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Terms are kept sorted strictly descending in the ring's monomial order,
/// with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        let mut p = Self::zero(ring);
        if !ring.field.is_zero(&c) {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn from_i64(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(n))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), ring.field.one())],
        }
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        let mut p = Self::zero(ring);
        if !ring.field.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        let order = &ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = ring.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !ring.field.is_zero(c));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit_constant() && self.field().is_one(&self.terms[0].1)
    }

    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field().zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let f = &self.ring.field;
        let order = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &Coeff| if negate_other { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), fix(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.merge(&big.mul_term(m, c), false);
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.try_add(other).expect("ring mismatch in polynomial addition")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.try_sub(other).expect("ring mismatch in polynomial subtraction")
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("ring mismatch in polynomial multiplication")
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), f.mul(c, d))).collect(),
        }
    }

    /// Multiplication by `c * m`; order is preserved since orders are
    /// multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), f.mul(c, d))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Weighted homogeneity: `Some(Some(d))` if homogeneous of degree `d`,
    /// `Some(None)` for the zero polynomial (homogeneous of every degree),
    /// `None` if not homogeneous.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<Option<u64>> {
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        match degs.next() {
            None => Some(None),
            Some(d) => degs.all(|e| e == d).then_some(Some(d)),
        }
    }

    /// Substitutes `images[i]` for variable `i`; the images all live in the
    /// target ring.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let c = target.field.from_rational(&coeff_to_rational(c)).unwrap_or_else(|_| target.field.zero());
            let mut t = Polynomial::constant(target, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Reinterprets the polynomial in a ring with the same variables but
    /// possibly a different order (re-sorting terms).
    pub fn recast(&self, ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.clone())
    }
}

fn coeff_to_rational(c: &Coeff) -> num_rational::BigRational {
    match c {
        Coeff::Q(q) => q.clone(),
        Coeff::P(v) => num_rational::BigRational::from_integer((*v).into()),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = &self.ring.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if !f.is_one(&abs) || m.is_one() {
                factors.push(f.fmt_coeff(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_polynomial;

    fn ring(field: Field) -> Arc<PolyRing> {
        PolyRing::new(field, &["x", "y", "z"])
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(Field::Rational);
        let p = parse_polynomial(&r, "(x+y)*(x-y)").unwrap();
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn additive_identity() {
        let r = ring(Field::Rational);
        let p = parse_polynomial(&r, "3*x^2*y - 1/2*z").unwrap();
        assert_eq!(p.add(&Polynomial::zero(&r)), p);
        assert_eq!(p.to_string(), "3*x^2*y - 1/2*z");
    }

    #[test]
    fn frobenius_in_char_two() {
        let r = ring(Field::prime(2).unwrap());
        let p = parse_polynomial(&r, "(x+y)^2").unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2");
    }

    #[test]
    fn mismatched_rings_error() {
        let a = parse_polynomial(&ring(Field::Rational), "x").unwrap();
        let b = parse_polynomial(&ring(Field::prime(5).unwrap()), "x").unwrap();
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn homogeneity_with_weights() {
        let r = ring(Field::Rational);
        let p = parse_polynomial(&r, "x^2 + y*z").unwrap();
        assert_eq!(p.homogeneous_degree(&[1, 1, 1]), Some(Some(2)));
        let q = parse_polynomial(&r, "x + y^2").unwrap();
        assert_eq!(q.homogeneous_degree(&[1, 1, 1]), None);
        assert_eq!(q.homogeneous_degree(&[2, 1, 1]), Some(Some(2)));
    }
}
