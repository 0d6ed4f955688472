//! Stabilization: a module over the zero locus becomes, after enough
//! syzygies, the cokernel of a matrix factorization.

use mfwork::error::Result;
use mfwork::functors::stabilize;
use mfwork::homalg::PresentedModule;
use mfwork::mf::Potential;
use mfwork::ring::{Field, PolyRing, RingPresentation};

fn main() -> Result<()> {
    let cases = [
        (vec!["x", "y"], "x*y", vec!["x", "y"]),
        (vec!["x", "y", "z"], "x^2 + y*z", vec!["x", "y", "z"]),
        (vec!["x", "y", "z"], "x*y*z", vec!["x"]),
    ];
    for (vars, w, gens) in cases {
        let r = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &vars, &vec![1; vars.len()]));
        let p = Potential::parse(&r, w)?;
        let s = p.zero_locus();
        let n = PresentedModule::cyclic(s, &gens.iter().map(|g| s.parse(g)).collect::<Result<Vec<_>>>()?);
        let st = stabilize(&p, &n, 8)?;
        let f = &st.factorization;
        println!("w = {w}, module S/({}):", gens.join(", "));
        println!("  syzygy {} with betti {:?}", st.syzygy_index, st.betti);
        println!("  factorization ({}, {}), valid {}", f.phi, f.psi, f.validate().is_none());
    }
    Ok(())
}
