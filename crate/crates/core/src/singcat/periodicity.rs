use crate::error::Result;
use crate::homalg::{factor_pair, free_resolution, FreeResolution, PresentedModule};
use crate::mf::{MatrixFactorization, Potential};

/// Outcome of scanning a minimal `S`-resolution for a repeating pair.
#[derive(Clone, Debug)]
pub struct PeriodicityReport {
    pub resolution: FreeResolution,
    /// 0-based position `i` such that `d_{i+1}, d_{i+2}` lift to a matrix
    /// factorization; for a finite resolution its length.
    pub start: Option<usize>,
    /// The validated pair over `R`; zero for a finite resolution.
    pub factorization: Option<MatrixFactorization>,
}

impl PeriodicityReport {
    pub fn is_periodic(&self) -> bool {
        self.start.is_some()
    }
}

/// Resolves `n` over `S = R/(w)` through `steps + 2` maps and returns the
/// first consecutive square pair `(d_{i+1}, d_{i+2})` with `i <= steps`
/// such that `d_{i+1} d_{i+2} = w C` over `R` with `C` invertible. The pair
/// `(d_{i+1}, d_{i+2} C^{-1})` is checked to be a matrix factorization of
/// `w` before it is reported.
pub fn verify_periodicity(potential: &Potential, n: &PresentedModule, steps: usize) -> Result<PeriodicityReport> {
    potential.require_nonzero_divisor()?;
    let s = potential.zero_locus();
    n.ring().check_same(s)?;
    let minimal = n.is_graded() && s.is_graded();
    let resolution = free_resolution(n, steps + 2, minimal)?;
    if resolution.complete && resolution.length() <= steps {
        let start = Some(resolution.length());
        return Ok(PeriodicityReport { resolution, start, factorization: Some(MatrixFactorization::zero(potential)) });
    }
    let maps = &resolution.maps;
    for i in 0..maps.len().saturating_sub(1).min(steps + 1) {
        if let Some((phi, psi)) = factor_pair(potential.ring(), potential.w(), &maps[i], &maps[i + 1])? {
            let mf = MatrixFactorization::new(potential, phi, psi)?;
            return Ok(PeriodicityReport { resolution, start: Some(i), factorization: Some(mf) });
        }
    }
    Ok(PeriodicityReport { resolution, start: None, factorization: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, PolyRing, Ring, RingPresentation};
    use std::sync::Arc;

    fn graded(vars: &[&str], w: &str) -> Potential {
        let mut cover = (*PolyRing::new(Field::Rational, vars)).clone();
        cover.weights = Some(vec![1; vars.len()]);
        let r: Ring = RingPresentation::polynomial(&Arc::new(cover));
        Potential::parse(&r, w).unwrap()
    }

    fn cyclic(p: &Potential, gens: &[&str]) -> PresentedModule {
        let s = p.zero_locus();
        PresentedModule::cyclic(s, &gens.iter().map(|g| s.parse(g).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn node_examples() {
        let p = graded(&["x", "y"], "x*y");
        let k = verify_periodicity(&p, &cyclic(&p, &["x", "y"]), 3).unwrap();
        assert_eq!(k.start, Some(1));
        assert_eq!(k.factorization.unwrap().rank(), 2);
        let sx = verify_periodicity(&p, &cyclic(&p, &["x"]), 3).unwrap();
        assert_eq!(sx.start, Some(0));
        assert_eq!(sx.factorization.unwrap().phi.to_string(), "1x1 [x]");
        let free = verify_periodicity(&p, &PresentedModule::free(p.zero_locus(), 1), 3).unwrap();
        assert_eq!(free.start, Some(0));
        assert_eq!(free.factorization.unwrap().rank(), 0);
    }

    #[test]
    fn residue_field_of_a1_threefold_surface() {
        let p = graded(&["x", "y", "z"], "x^2 + y*z");
        let k = verify_periodicity(&p, &cyclic(&p, &["x", "y", "z"]), 3).unwrap();
        assert_eq!(k.resolution.betti()[..4], [1, 3, 4, 4]);
        assert_eq!(k.start, Some(2));
        assert!(k.factorization.unwrap().validate().is_none());
    }

    #[test]
    fn scalar_multiple_of_the_potential() {
        let p = graded(&["x", "y"], "2*x*y");
        let k = verify_periodicity(&p, &cyclic(&p, &["x", "y"]), 3).unwrap();
        assert_eq!(k.start, Some(1));
        assert!(k.factorization.unwrap().validate().is_none());
    }
}
