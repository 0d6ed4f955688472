//! Certified checks of the comparison between modules over the zero locus
//! and factorizations, plus the shift-square identity on stabilizations.

use mfwork::error::Result;
use mfwork::homalg::PresentedModule;
use mfwork::matrix::Matrix;
use mfwork::mf::{MatrixFactorization, Potential};
use mfwork::ring::{Field, PolyRing, RingPresentation};
use mfwork::singcat::{shift_square_witness, verify_main_equivalence};

fn main() -> Result<()> {
    let r = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &["x", "y"], &[1, 1]));
    let w = Potential::parse(&r, "x*y")?;
    let s = w.zero_locus();
    let modules = vec![
        PresentedModule::cyclic(s, &[s.parse("x")?, s.parse("y")?]),
        PresentedModule::cyclic(s, &[s.parse("x")?]),
        PresentedModule::free(s, 1),
    ];
    let facs = vec![
        MatrixFactorization::new(&w, Matrix::parse(&r, "1x1 [x]")?, Matrix::parse(&r, "1x1 [y]")?)?,
        MatrixFactorization::new(&w, Matrix::parse(&r, "2x2 [x, y; 0, -y]")?, Matrix::parse(&r, "2x2 [y, y; 0, -x]")?)?,
    ];
    let report = verify_main_equivalence(&w, &modules, &facs)?;
    for c in &report.checks {
        println!("{} on object {}: {}", c.kind, c.object, if c.passed { "certified" } else { "FAILED" });
    }
    println!("all checks passed: {}", report.passed());

    let sq = shift_square_witness(&w, &modules[0], 8)?;
    println!("shift^2 fixes the stabilization of k: matrices {}, cokernel {}", sq.matrices_fixed, sq.xi_fixed);
    Ok(())
}
