use crate::error::Result;
use crate::homalg::{free_resolution, kernel, ModuleMap, PresentedModule};
use crate::matrix::Matrix;
use crate::mf::Potential;

/// `Ω^depth F ≅ lift/w·lift` with `w` injective on `lift`. Together with the
/// free `S`-modules of the resolution (restrictions of free `R`-modules) this
/// is a finite resolution of `F` by restrictions of `w`-flat `R`-modules.
#[derive(Clone, Debug)]
pub struct RelativeWitness {
    pub depth: usize,
    /// The syzygy over `S`, presented by `d_{depth+1}`.
    pub syzygy: PresentedModule,
    /// Over `R`: the same relation matrix read over `R`.
    pub lift: PresentedModule,
    /// Ranks of the `S`-resolution up to `depth`.
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum RelativePerfectness {
    Yes(RelativeWitness),
    /// No witness up to the given depth; no claim either way.
    Unknown(usize),
}

impl RelativePerfectness {
    pub fn is_yes(&self) -> bool {
        matches!(self, RelativePerfectness::Yes(_))
    }
}

/// Semi-decision for vanishing in the relative singularity category: walks
/// the `S`-resolution of `f` and, for each syzygy up to `depth`, reads its
/// relation matrix over `R` and tests whether `w` is injective on that
/// cokernel. Its reduction mod `w` is the syzygy on the same generators.
pub fn relative_perfect_certificate(potential: &Potential, f: &PresentedModule, depth: usize) -> Result<RelativePerfectness> {
    potential.require_nonzero_divisor()?;
    let s = potential.zero_locus();
    let r = potential.ring();
    f.ring().check_same(s)?;
    let minimal = f.is_graded() && s.is_graded();
    let res = free_resolution(f, depth + 1, minimal)?;
    let betti = res.betti();
    for j in 0..=depth {
        let Some(gj) = betti.get(j).copied() else { break };
        let rel = res.maps.get(j).cloned().unwrap_or_else(|| Matrix::zeros(s, gj, 0));
        let syzygy = PresentedModule::new(rel.clone(), None)?;
        let lift = PresentedModule::new(rel.over(r)?, None)?;
        if w_is_injective(&lift, potential)? {
            let betti = betti[..=j].to_vec();
            return Ok(RelativePerfectness::Yes(RelativeWitness { depth: j, syzygy, lift, betti }));
        }
    }
    Ok(RelativePerfectness::Unknown(depth))
}

fn w_is_injective(m: &PresentedModule, potential: &Potential) -> Result<bool> {
    if m.gens() == 0 {
        return Ok(true);
    }
    let mul = ModuleMap::new(m.clone(), m.clone(), Matrix::scalar(m.ring(), m.gens(), potential.w()))?;
    kernel(&mul)?.0.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, PolyRing, Ring, RingPresentation};
    use std::sync::Arc;

    fn crossing() -> Potential {
        let mut cover = (*PolyRing::new(Field::Rational, &["x", "y", "z"])).clone();
        cover.weights = Some(vec![1, 1, 1]);
        let p: Ring = RingPresentation::polynomial(&Arc::new(cover));
        let r = p.quotient(&[p.parse("x*y").unwrap()]).unwrap();
        Potential::parse(&r, "z").unwrap()
    }

    fn cyclic(p: &Potential, gens: &[&str]) -> PresentedModule {
        let s = p.zero_locus();
        PresentedModule::cyclic(s, &gens.iter().map(|g| s.parse(g).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn restriction_of_a_component_is_relatively_perfect() {
        let p = crossing();
        match relative_perfect_certificate(&p, &cyclic(&p, &["x"]), 2).unwrap() {
            RelativePerfectness::Yes(w) => {
                assert_eq!(w.depth, 0);
                assert_eq!(w.lift.relations().to_string(), "1x1 [x]");
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn residue_field_lifts_along_the_product() {
        // X = X₀ × A¹ with w = z: k lifts to the z-flat module R/(x, y).
        let p = crossing();
        let k = cyclic(&p, &["x", "y", "z"]);
        match relative_perfect_certificate(&p, &k, 2).unwrap() {
            RelativePerfectness::Yes(w) => {
                assert_eq!(w.depth, 0);
                assert_eq!(w.lift.relations().to_string(), "1x2 [x, y]");
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn torsion_lift_is_rejected() {
        // Over the regular cover k[x, y] with w = xy no syzygy of k lifts flatly.
        let mut cover = (*PolyRing::new(Field::Rational, &["x", "y"])).clone();
        cover.weights = Some(vec![1, 1]);
        let r: Ring = RingPresentation::polynomial(&Arc::new(cover));
        let p = Potential::parse(&r, "x*y").unwrap();
        let k = cyclic(&p, &["x", "y"]);
        assert!(matches!(relative_perfect_certificate(&p, &k, 2).unwrap(), RelativePerfectness::Unknown(2)));
    }

    #[test]
    fn zero_and_free_modules() {
        let p = crossing();
        assert!(relative_perfect_certificate(&p, &cyclic(&p, &["1"]), 0).unwrap().is_yes());
        assert!(relative_perfect_certificate(&p, &PresentedModule::free(p.zero_locus(), 2), 0).unwrap().is_yes());
    }
}
