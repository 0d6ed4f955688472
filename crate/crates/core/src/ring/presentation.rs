use std::fmt;
use std::sync::Arc;

use super::parse::parse_polynomial;
use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, ModuleOrder, Vector};

/// `R = P / I` for the polynomial cover `P`. Elements of `R` are
/// represented by polynomials of `P`, canonically by their normal form
/// modulo the reduced Gröbner basis of `I`.
pub struct RingPresentation {
    cover: Arc<PolyRing>,
    ideal: Vec<Polynomial>,
    gb: GroebnerBasis,
}

pub type Ring = Arc<RingPresentation>;

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.cover.field, self.cover.vars.join(","))?;
        if !self.gb.is_empty() {
            let gens: Vec<String> = self.ideal.iter().map(|p| p.to_string()).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

impl RingPresentation {
    pub fn new(cover: &Arc<PolyRing>, ideal: Vec<Polynomial>) -> Result<Ring> {
        if let Some(w) = &cover.weights {
            if w.len() != cover.nvars() || w.contains(&0) {
                return Err(Error::InvalidInput("weights must be positive, one per variable".into()));
            }
            if let Some(g) = ideal.iter().find(|g| g.homogeneous_degree(w).is_none()) {
                return Err(Error::Ungraded(format!("ideal generator {g} is not homogeneous")));
            }
        }
        if ideal.iter().any(|g| g.ring() != cover) {
            return Err(Error::RingMismatch);
        }
        let ideal: Vec<Polynomial> = ideal.into_iter().filter(|g| !g.is_zero()).collect();
        let gb = GroebnerBasis::ideal(cover, &ideal)?;
        Ok(Arc::new(RingPresentation { cover: cover.clone(), ideal, gb }))
    }

    pub fn polynomial(cover: &Arc<PolyRing>) -> Ring {
        Self::new(cover, Vec::new()).expect("empty ideal")
    }

    /// `R / (extra)`.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<Ring> {
        let mut ideal = self.ideal.clone();
        ideal.extend(extra.iter().cloned());
        Self::new(&self.cover, ideal)
    }

    pub fn cover(&self) -> &Arc<PolyRing> {
        &self.cover
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub fn ideal_gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// True when the defining ideal is zero.
    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gb.is_everything()
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.cover.weights.as_deref()
    }

    pub fn is_graded(&self) -> bool {
        self.cover.weights.is_some()
    }

    /// Same cover and same ideal.
    pub fn same(&self, other: &RingPresentation) -> bool {
        std::ptr::eq(self, other)
            || (self.cover == other.cover && self.gb.polys() == other.gb.polys())
    }

    pub fn check_same(&self, other: &RingPresentation) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.gb.is_empty() {
            p.clone()
        } else {
            self.gb.normal_form_poly(p)
        }
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn eq_elem(&self, a: &Polynomial, b: &Polynomial) -> bool {
        self.is_zero(&a.sub(b))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.cover)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.cover)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.cover, i)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Ok(self.reduce(&parse_polynomial(&self.cover, text)?))
    }

    /// Weighted homogeneous degree of `p` (see
    /// [`Polynomial::homogeneous_degree`]), after reduction.
    pub fn degree_of(&self, p: &Polynomial) -> Result<Option<Option<u64>>> {
        let w = self
            .weights()
            .ok_or_else(|| Error::Ungraded("ring has no grading".into()))?;
        Ok(self.reduce(p).homogeneous_degree(w))
    }

    /// Generators of the preimage in `P^rank` of the submodule of `R^rank`
    /// spanned by `gens`: the generators plus `I * e_i`.
    pub fn submodule_gens(&self, rank: usize, gens: &[Vector]) -> Vec<Vector> {
        let mut out: Vec<Vector> = gens.to_vec();
        let ideal = self.gb.polys();
        for i in 0..rank {
            for g in &ideal {
                let mut v: Vector = (0..rank).map(|_| self.zero()).collect();
                v[i] = g.clone();
                out.push(v);
            }
        }
        out
    }

    pub fn submodule_gb(&self, rank: usize, gens: &[Vector]) -> Result<GroebnerBasis> {
        GroebnerBasis::new(&self.cover, rank, &self.submodule_gens(rank, gens), ModuleOrder::PositionOverTerm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;

    #[test]
    fn quotient_reduces() {
        let cover = PolyRing::new(Field::Rational, &["x", "y"]);
        let r = RingPresentation::polynomial(&cover);
        let s = r.quotient(&[r.parse("x*y").unwrap()]).unwrap();
        assert!(s.is_zero(&s.parse("x^2*y + x*y^3").unwrap()));
        assert!(!s.is_zero(&s.parse("x").unwrap()));
        assert!(!r.same(&s));
        let s2 = r.quotient(&[r.parse("2*x*y").unwrap()]).unwrap();
        assert!(s.same(&s2));
    }

    #[test]
    fn graded_ring_requires_homogeneous_ideal() {
        let mut cover = (*PolyRing::new(Field::Rational, &["x", "y"])).clone();
        cover.weights = Some(vec![1, 1]);
        let cover = Arc::new(cover);
        let bad = parse_polynomial(&cover, "x + y^2").unwrap();
        assert!(matches!(RingPresentation::new(&cover, vec![bad]), Err(Error::Ungraded(_))));
    }
}
