//! Minimal free resolutions over the node `S = Q[x,y]/(xy)` and the graded
//! perfectness test.

use mfwork::error::Result;
use mfwork::homalg::{free_resolution, is_perfect, Perfectness, PresentedModule};
use mfwork::ring::{Field, PolyRing, RingPresentation};

fn main() -> Result<()> {
    let r = RingPresentation::polynomial(&PolyRing::weighted(Field::Rational, &["x", "y"], &[1, 1]));
    let s = r.quotient(&[r.parse("x*y")?])?;

    for (label, gens) in [("k", vec!["x", "y"]), ("S/(x)", vec!["x"])] {
        let n = PresentedModule::cyclic(&s, &gens.iter().map(|g| s.parse(g)).collect::<Result<Vec<_>>>()?);
        let res = free_resolution(&n, 5, true)?;
        println!("{label} over {s}: betti {:?}, verified {}", res.betti(), res.verify()?);
        for (i, d) in res.maps.iter().enumerate() {
            println!("  d{} = {d}", i + 1);
        }
        match is_perfect(&n, 6)? {
            Perfectness::Yes(pd) => println!("  perfect, pd {pd}"),
            Perfectness::No(cert) => println!("  not perfect: {cert}"),
            Perfectness::Unknown => println!("  undecided within the bound"),
        }
    }

    // Over the regular ring every module is perfect.
    let k = PresentedModule::cyclic(&r, &[r.parse("x")?, r.parse("y")?]);
    if let Perfectness::Yes(pd) = is_perfect(&k, 4)? {
        println!("k over {r}: perfect, pd {pd}");
    }
    Ok(())
}
