//! The cokernel functor `Ξ`, flat covers, its derived version and the
//! inverse construction `Υ` on complexes of modules over the zero locus.

use mfwork::error::Result;
use mfwork::functors::{flat_cover, l_xi, upsilon, upsilon_xi_unit, xi, ModuleComplex};
use mfwork::homalg::PresentedModule;
use mfwork::matrix::Matrix;
use mfwork::mf::{MatrixFactorization, Potential};
use mfwork::ring::{Field, PolyRing, RingPresentation};

fn main() -> Result<()> {
    let r = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &["x", "y"], &[1, 1]));
    let w = Potential::parse(&r, "x*y")?;
    let s = w.zero_locus();
    let m = MatrixFactorization::new(&w, Matrix::parse(&r, "1x1 [x]")?, Matrix::parse(&r, "1x1 [y]")?)?.to_coherent();

    let x = xi(&m, true)?;
    println!("Xi(x, y) = coker {} over {}", x.relations(), x.ring());

    let cover = flat_cover(&m)?;
    println!("flat cover strategy {:?}, kernel contractible: {}", cover.strategy, cover.kernel_contraction.is_some());

    let lx = l_xi(&m)?;
    println!("L Xi: {} terms starting in degree {}", lx.complex.terms.len(), lx.complex.lowest);

    // Υ of the module S/(x), viewed as a complex in degree 0.
    let n = PresentedModule::cyclic(s, &[s.parse("x")?]);
    let u = upsilon(&w, &ModuleComplex::single(&n))?;
    println!("Upsilon(S/(x)) valid: {}", u.validate()?.is_none());
    if let Some(f) = u.as_matrix_factorization() {
        println!("  = ({}, {})", f.phi, f.psi);
    }

    let unit = upsilon_xi_unit(&m)?;
    println!("unit M -> Upsilon Xi M closed: {}, kernel contracted by a degree-{} map", unit.phi.is_closed()?, unit.contraction.degree);
    Ok(())
}
