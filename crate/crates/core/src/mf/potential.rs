use std::fmt;

use crate::error::{Error, Result};
use crate::homalg::linalg;
use crate::ring::{Polynomial, Ring};

/// A superpotential `w ∈ R` together with `S = R/(w)`.
#[derive(Clone)]
pub struct Potential {
    ring: Ring,
    w: Polynomial,
    nonzero_divisor: bool,
    zero_locus: Ring,
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.w, self.ring)
    }
}

impl Potential {
    /// Reduces `w` and certifies whether `(0 : w) = 0`.
    pub fn new(ring: &Ring, w: &Polynomial) -> Result<Self> {
        if w.ring() != ring.cover() {
            return Err(Error::RingMismatch);
        }
        let w = ring.reduce(w);
        let nonzero_divisor = !w.is_zero() && linalg::syzygies(ring, 1, &[vec![w.clone()]])?.is_empty();
        let zero_locus = ring.quotient(std::slice::from_ref(&w))?;
        Ok(Potential { ring: ring.clone(), w, nonzero_divisor, zero_locus })
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        Self::new(ring, &ring.parse(text)?)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn w(&self) -> &Polynomial {
        &self.w
    }

    pub fn is_nonzero_divisor(&self) -> bool {
        self.nonzero_divisor
    }

    pub fn require_nonzero_divisor(&self) -> Result<()> {
        if self.nonzero_divisor {
            Ok(())
        } else {
            Err(Error::ZeroDivisorPotential)
        }
    }

    /// `S = R/(w)`.
    pub fn zero_locus(&self) -> &Ring {
        &self.zero_locus
    }

    pub fn is_unit(&self) -> bool {
        self.zero_locus.is_zero_ring()
    }

    /// `-w` on the same ring.
    pub fn opposite(&self) -> Potential {
        Potential {
            ring: self.ring.clone(),
            w: self.w.neg(),
            nonzero_divisor: self.nonzero_divisor,
            zero_locus: self.zero_locus.clone(),
        }
    }

    pub fn same(&self, other: &Potential) -> bool {
        self.ring.same(&other.ring) && self.w == other.w
    }

    pub fn check_same(&self, other: &Potential) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::PotentialMismatch)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, PolyRing, RingPresentation};

    #[test]
    fn nonzero_divisor_certificate() {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"]));
        assert!(Potential::parse(&r, "x*y").unwrap().is_nonzero_divisor());
        let node = r.quotient(&[r.parse("x*y").unwrap()]).unwrap();
        assert!(!Potential::parse(&node, "x").unwrap().is_nonzero_divisor());
        assert!(Potential::parse(&r, "1").unwrap().is_unit());
    }
}
