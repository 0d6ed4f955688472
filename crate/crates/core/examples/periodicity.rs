//! Resolutions over hypersurfaces become 2-periodic, and the repeating pair
//! of differentials is a matrix factorization.

use mfwork::error::Result;
use mfwork::homalg::PresentedModule;
use mfwork::mf::Potential;
use mfwork::ring::{Field, PolyRing, RingPresentation};
use mfwork::singcat::verify_periodicity;

fn main() -> Result<()> {
    let cases = [(vec!["x", "y"], "x*y", vec!["x", "y"]), (vec!["x", "y"], "x*y", vec!["x"]), (vec!["x", "y", "z"], "x^2 + y*z", vec!["x", "y", "z"])];
    for (vars, w, gens) in cases {
        let r = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &vars, &vec![1; vars.len()]));
        let p = Potential::parse(&r, w)?;
        let s = p.zero_locus();
        let n = PresentedModule::cyclic(s, &gens.iter().map(|g| s.parse(g)).collect::<Result<Vec<_>>>()?);
        let rep = verify_periodicity(&p, &n, 3)?;
        print!("w = {w}, S/({}): betti {:?}", gens.join(", "), rep.resolution.betti());
        match (rep.start, rep.factorization) {
            (Some(i), Some(f)) => println!(", periodic from step {i} with ({}, {})", f.phi, f.psi),
            _ => println!(", no period found"),
        }
    }
    Ok(())
}
