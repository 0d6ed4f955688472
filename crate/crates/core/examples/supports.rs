//! Supports of factorizations: the support of the cokernels and the
//! categorical support cut out by the annihilator of the endomorphisms.

use mfwork::error::Result;
use mfwork::functors::{support_cat, support_set, upsilon, ModuleComplex};
use mfwork::homalg::PresentedModule;
use mfwork::matrix::Matrix;
use mfwork::mf::{MatrixFactorization, Potential};
use mfwork::ring::{Field, PolyRing, RingPresentation};

fn main() -> Result<()> {
    let r = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &["x", "y", "z"], &[1, 1, 1]));
    let w = Potential::parse(&r, "x*y*z")?;
    for (a, b) in [("1x1 [x]", "1x1 [y*z]"), ("1x1 [x*y]", "1x1 [z]"), ("1x1 [1]", "1x1 [x*y*z]")] {
        let m = MatrixFactorization::new(&w, Matrix::parse(&r, a)?, Matrix::parse(&r, b)?)?;
        let set = support_set(&m.to_coherent())?;
        let cat = support_cat(&m)?;
        println!("({}, {}): support {set}, categorical support {cat}, nested {}", m.phi, m.psi, cat.contains_ideal(&set));
    }
    // Free components are supported everywhere; a coherent object built
    // from S/(x) is supported on x = 0.
    let s = w.zero_locus();
    let u = upsilon(&w, &ModuleComplex::single(&PresentedModule::cyclic(s, &[s.parse("x")?])))?;
    println!("Upsilon(S/(x)): support {}", support_set(&u)?);
    Ok(())
}
