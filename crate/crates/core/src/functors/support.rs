use crate::error::Result;
use crate::homalg::{annihilator, Ideal};
use crate::mf::{hom_cohomology, CoherentFactorization, MatrixFactorization};

/// `ann(M⁰ ⊕ M¹)`; its zero set is the set-theoretic support.
pub fn support_set(m: &CoherentFactorization) -> Result<Ideal> {
    annihilator(&m.m0.direct_sum(&m.m1)?)
}

/// `ann H⁰(End M) ∩ ann H¹(End M)` pulled back to `R`; its zero set is the
/// locus where `M` is not contractible.
pub fn support_cat(m: &MatrixFactorization) -> Result<Ideal> {
    let h = hom_cohomology(m, m)?;
    let r = m.ring();
    let to_r = |i: Ideal| -> Result<Ideal> {
        let mut g = i.gens().to_vec();
        g.push(m.potential.w().clone());
        Ideal::new(r, g)
    };
    let a = to_r(annihilator(&h.h0)?)?;
    let b = to_r(annihilator(&h.h1)?)?;
    a.intersect(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{upsilon, ModuleComplex};
    use crate::homalg::PresentedModule;
    use crate::matrix::Matrix;
    use crate::mf::Potential;
    use crate::ring::{Field, PolyRing, RingPresentation};

    #[test]
    fn supports_on_the_node() {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"]));
        let p = Potential::parse(&r, "x*y").unwrap();
        let m = MatrixFactorization::new(
            &p,
            Matrix::parse_rows(&r, &[vec!["x"]]).unwrap(),
            Matrix::parse_rows(&r, &[vec!["y"]]).unwrap(),
        )
        .unwrap();
        assert!(support_set(&m.to_coherent()).unwrap().is_zero());
        let sc = support_cat(&m).unwrap();
        assert!(sc.same_radical_within(&Ideal::parse(&r, &["x", "y"]).unwrap(), 4).unwrap());
        assert!(support_cat(&MatrixFactorization::trivial(&p, 2, false)).unwrap().is_unit().unwrap());
        assert!(support_set(&CoherentFactorization::zero(&p)).unwrap().is_unit().unwrap());
        let s = p.zero_locus();
        let u = upsilon(&p, &ModuleComplex::single(&PresentedModule::cyclic(s, &[s.parse("x").unwrap()]))).unwrap();
        let ann = support_set(&u).unwrap();
        assert!(ann.contains(&r.parse("x").unwrap()) && ann.contains(&r.parse("x*y").unwrap()));
    }
}
