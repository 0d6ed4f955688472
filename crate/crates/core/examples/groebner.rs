//! Gröbner bases, normal forms, ideal membership with cofactors, and
//! syzygies in `Q[x,y,z]`.

use mfwork::error::Result;
use mfwork::groebner::{GroebnerBasis, LiftEngine, Vector};
use mfwork::ring::{Field, PolyRing, RingPresentation};

fn main() -> Result<()> {
    let p = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y", "z"]));
    let c = p.cover();
    let gens = vec![p.parse("x^2 - y*z")?, p.parse("x*y - z^2")?, p.parse("y^2 - x*z")?];

    let gb = GroebnerBasis::ideal(c, &gens)?;
    println!("reduced basis ({} elements, degrevlex):", gb.len());
    for g in gb.polys() {
        println!("  {g}");
    }

    let f = p.parse("x^3*y + z^4 - 7")?;
    println!("NF({f}) = {}", gb.normal_form_poly(&f));

    // A member of the ideal and cofactors expressing it in the generators.
    let member = p.parse("x^3 - x*y*z + y^3 - x*y*z")?;
    let cols: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
    let engine = LiftEngine::new(c, 1, &cols)?;
    match engine.lift(std::slice::from_ref(&member)) {
        Some(a) => println!("{member} = sum of ({}) * gens", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
        None => println!("{member} is not in the ideal"),
    }

    println!("syzygies of the generators:");
    for s in engine.syzygies() {
        println!("  ({})", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    }

    // The same ideal as a quotient ring.
    let q = p.quotient(&gens)?;
    println!("in {q}: x^3 - y^3 reduces to {}", q.reduce(&q.parse("x^3 - y^3")?));
    Ok(())
}
