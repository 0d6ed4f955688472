use std::fmt;

use super::linalg;
use crate::error::Result;
use crate::groebner::GroebnerBasis;
use crate::ring::{Polynomial, Ring};

/// An ideal of `R = P/I`, kept as the reduced Gröbner basis of its
/// preimage in `P` minus the elements of `I`.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: GroebnerBasis,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        let mut all = gens;
        all.extend(ring.ideal_gb().polys());
        let gb = GroebnerBasis::ideal(ring.cover(), &all)?;
        let gens = gb.polys().into_iter().filter(|p| !ring.is_zero(p)).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Self> {
        let g: Result<Vec<Polynomial>> = gens.iter().map(|s| ring.parse(s)).collect();
        Self::new(ring, g?)
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![ring.one()]).expect("unit ideal")
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new()).expect("zero ideal")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Generators (reduced Gröbner basis modulo the ring's ideal).
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.gb.normal_form_poly(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|p| self.contains(p))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        Ok(self.contains_ideal(other) && other.contains_ideal(self))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb.is_everything())
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn pow(&self, e: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `{r : r ∈ self and r ∈ other}` via syzygies of `[1 1; a 0; 0 b]`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let ring = &self.ring;
        let z = ring.zero();
        let mut cols = vec![vec![ring.one(), ring.one()]];
        cols.extend(self.gens.iter().map(|a| vec![a.clone(), z.clone()]));
        cols.extend(other.gens.iter().map(|b| vec![z.clone(), b.clone()]));
        let gens = linalg::syzygies(ring, 2, &cols)?
            .into_iter()
            .map(|s| s[0].clone())
            .filter(|p| !p.is_zero())
            .collect();
        Ideal::new(ring, gens)
    }

    /// Same vanishing locus, decided by `self^k ⊆ other` and `other^k ⊆ self`
    /// for some `k <= bound`.
    pub fn same_radical_within(&self, other: &Ideal, bound: u32) -> Result<bool> {
        Ok(self.power_contained_in(other, bound)? && other.power_contained_in(self, bound)?)
    }

    pub fn power_contained_in(&self, other: &Ideal, bound: u32) -> Result<bool> {
        let mut p = self.clone();
        for _ in 0..bound {
            if other.contains_ideal(&p) {
                return Ok(true);
            }
            p = p.mul(self)?;
        }
        Ok(other.contains_ideal(&p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, PolyRing, RingPresentation};

    #[test]
    fn intersection_of_principal_ideals() {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"]));
        let a = Ideal::parse(&r, &["x"]).unwrap();
        let b = Ideal::parse(&r, &["y"]).unwrap();
        assert!(a.intersect(&b).unwrap().equals(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        let m2 = m.pow(2).unwrap();
        assert!(m.same_radical_within(&m2, 3).unwrap());
        assert!(!m.same_radical_within(&a, 3).unwrap());
    }
}
