//! Relative perfectness over a singular base: a module over the zero locus
//! lifts, up to syzygies, to a base module on which `w` is injective.

use mfwork::error::Result;
use mfwork::homalg::PresentedModule;
use mfwork::mf::Potential;
use mfwork::ring::{Field, PolyRing, RingPresentation};
use mfwork::singcat::{relative_perfect_certificate, RelativePerfectness};

fn report(p: &Potential, gens: &[&str]) -> Result<()> {
    let s = p.zero_locus();
    let n = PresentedModule::cyclic(s, &gens.iter().map(|g| s.parse(g)).collect::<Result<Vec<_>>>()?);
    match relative_perfect_certificate(p, &n, 2)? {
        RelativePerfectness::Yes(c) => println!("  S/({}): certified at depth {}, lift coker {}", gens.join(", "), c.depth, c.lift.relations()),
        RelativePerfectness::Unknown(d) => println!("  S/({}): no certificate up to depth {d}", gens.join(", ")),
    }
    Ok(())
}

fn main() -> Result<()> {
    // Base Q[x,y,z]/(xy), w = z: the zero locus is a product with a line.
    let cover = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &["x", "y", "z"], &[1, 1, 1]));
    let r = cover.quotient(&[cover.parse("x*y")?])?;
    let p = Potential::parse(&r, "z")?;
    println!("over {r}, w = z:");
    report(&p, &["x"])?;
    report(&p, &["x", "y", "z"])?;

    // Base Q[x,y], w = xy: the residue field has no w-torsion-free lift.
    let plane = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &["x", "y"], &[1, 1]));
    let q = Potential::parse(&plane, "x*y")?;
    println!("over {plane}, w = xy:");
    report(&q, &["x"])?;
    report(&q, &["x", "y"])?;
    Ok(())
}
