//! Morphisms of factorizations: differentials, cones, null-homotopies and
//! contracting homotopies.

use mfwork::error::Result;
use mfwork::matrix::Matrix;
use mfwork::mf::{contracting_homotopy, MFMorphism, MatrixFactorization, Potential};
use mfwork::ring::{Field, PolyRing, RingPresentation};

fn main() -> Result<()> {
    let r = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &["x", "y"], &[1, 1]));
    let w = Potential::parse(&r, "x*y")?;
    let mf = |a: &str, b: &str| -> Result<MatrixFactorization> { MatrixFactorization::new(&w, Matrix::parse(&r, a)?, Matrix::parse(&r, b)?) };
    let m = mf("1x1 [x]", "1x1 [y]")?.to_coherent();
    let t = mf("1x1 [1]", "1x1 [x*y]")?.to_coherent();

    // d(h) of a degree-one map is closed and null-homotopic by construction.
    let h = MFMorphism::new(&m, &m, 1, Matrix::parse(&r, "1x1 [1]")?, Matrix::parse(&r, "1x1 [0]")?)?;
    let dh = h.differential();
    println!("d(h) = ({}, {}), closed {}", dh.f0, dh.f1, dh.is_closed()?);
    println!("d(h) null-homotopic: {}", dh.null_homotopy()?.is_some());

    let id = MFMorphism::identity(&m);
    println!("id_M null-homotopic: {}", id.null_homotopy()?.is_some());

    let cone = id.cone(true)?;
    let c = cone.as_matrix_factorization().expect("cone of free factorizations is free");
    println!("cone(id_M) = ({}, {})", c.phi, c.psi);
    println!("cone(id_M) contractible: {}", contracting_homotopy(&cone)?.is_some());

    for (label, x) in [("(x, y)", &m), ("(1, xy)", &t)] {
        match contracting_homotopy(x)? {
            Some(k) => println!("{label}: contracting homotopy ({}, {})", k.f0, k.f1),
            None => println!("{label}: not contractible"),
        }
    }
    Ok(())
}
