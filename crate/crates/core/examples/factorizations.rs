//! Matrix factorizations of `w = xy` and the operations on them: validation,
//! shift, dual, direct sum, minimization and the Hom cohomology.

use mfwork::error::Result;
use mfwork::matrix::Matrix;
use mfwork::mf::{hom_cohomology, MatrixFactorization, Potential};
use mfwork::ring::{Field, PolyRing, RingPresentation};

fn main() -> Result<()> {
    let r = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &["x", "y"], &[1, 1]));
    let w = Potential::parse(&r, "x*y")?;
    let m = MatrixFactorization::new(&w, Matrix::parse(&r, "1x1 [x]")?, Matrix::parse(&r, "1x1 [y]")?)?;
    println!("M = ({}, {})", m.phi, m.psi);

    // `unchecked` keeps an invalid pair so that `validate` can report it.
    let bad = MatrixFactorization::unchecked(&w, Matrix::parse(&r, "1x1 [x]")?, Matrix::parse(&r, "1x1 [x]")?)?;
    println!("(x, x): {}", bad.validate().map_or("valid".into(), |v| v.to_string()));

    let t = m.shift();
    println!("shift M = ({}, {})", t.phi, t.psi);
    let d = m.dual();
    println!("dual M = ({}, {}) over w = {}", d.phi, d.psi, d.potential.w());
    println!("dual twice equals M up to sign: {}", d.dual().normalize_sign().same(&m));

    let sum = m.direct_sum(&t)?;
    println!("M + shift M = ({}, {})", sum.phi, sum.psi);

    // A unit entry splits off a trivial summand.
    let padded = m.direct_sum(&MatrixFactorization::trivial(&w, 1, false))?;
    println!("minimize of a padded M has rank {}", padded.minimize().rank());

    let h = hom_cohomology(&m, &m)?;
    println!("H^0 End(M) = coker {}", h.h0.relations());
    println!("H^1 End(M) = coker {}", h.h1.relations());
    let h = hom_cohomology(&m, &t)?;
    println!("H^0 Hom(M, shift M) = coker {}", h.h0.relations());
    Ok(())
}
