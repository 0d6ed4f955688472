use crate::error::{Error, Result};
use crate::homalg::linalg::Solver;
use crate::homalg::{free_resolution, PresentedModule};
use crate::matrix::Matrix;
use crate::mf::{MatrixFactorization, Potential};

/// A matrix factorization whose cokernel over `S` is the `syzygy_index`-th
/// syzygy of the input.
#[derive(Clone, Debug)]
pub struct Stabilization {
    /// Reduced: unit summands `(1, w)` and `(w, 1)` split off.
    pub factorization: MatrixFactorization,
    /// Before reduction; `Ξ` of this is `syzygy` on the same generators.
    pub presentation: MatrixFactorization,
    pub syzygy_index: usize,
    /// The syzygy module over `S`, presented as `coker(d_{j+1})`.
    pub syzygy: PresentedModule,
    /// Ranks of the free modules in the `S`-resolution that was computed.
    pub betti: Vec<usize>,
}

/// Walks up the `S`-resolution (minimal when graded) of `n` until a syzygy has a free
/// presentation over `R` (the `R`-kernel of its minimal cover is free), then
/// sets `Φ` to that presentation and `Ψ` to the lift of `w·Id` through `Φ`.
pub fn stabilize(potential: &Potential, n: &PresentedModule, max_syzygy: usize) -> Result<Stabilization> {
    potential.require_nonzero_divisor()?;
    let s = potential.zero_locus();
    let r = potential.ring();
    n.ring().check_same(s)?;
    let res = free_resolution(n, max_syzygy + 1, n.is_graded() && s.is_graded())?;
    let betti = res.betti();
    for j in 0..=max_syzygy {
        let Some(gj) = betti.get(j).copied() else { break };
        let rel = res.maps.get(j).cloned().unwrap_or_else(|| Matrix::zeros(s, gj, 0));
        let omega = PresentedModule::new(rel, res.degrees.as_ref().and_then(|d| d.get(j).cloned()))?;
        let over_r = omega.restrict_to(r)?;
        let rr = free_resolution(&over_r, 1, over_r.is_graded() && r.is_graded())?;
        if !rr.complete {
            continue;
        }
        let g = rr.module.gens();
        let phi = rr.maps.first().cloned().unwrap_or_else(|| Matrix::zeros(r, g, 0));
        if phi.cols() != g {
            continue;
        }
        let full = if g == 0 {
            MatrixFactorization::zero(potential)
        } else {
            let solver = Solver::new(r, g, &phi.columns())?;
            let mut cols = Vec::with_capacity(g);
            for i in 0..g {
                let e: Vec<_> = (0..g).map(|k| if k == i { potential.w().clone() } else { r.zero() }).collect();
                cols.push(solver.solve(&e).ok_or_else(|| Error::Internal("w·Id does not factor through Φ".into()))?);
            }
            let psi = Matrix::from_columns(r, g, &cols);
            MatrixFactorization::new(potential, phi, psi)?
        };
        return Ok(Stabilization { factorization: full.minimize(), presentation: full, syzygy_index: j, syzygy: omega, betti });
    }
    Err(Error::Exhausted(format!("no syzygy up to index {max_syzygy} is maximal Cohen-Macaulay; betti numbers over S: {betti:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::xi;
    use crate::homalg::{is_isomorphism, ModuleMap};
    use crate::ring::{Field, PolyRing, Ring, RingPresentation};
    use std::sync::Arc;

    fn node() -> Potential {
        let mut cover = (*PolyRing::new(Field::Rational, &["x", "y"])).clone();
        cover.weights = Some(vec![1, 1]);
        let r: Ring = RingPresentation::polynomial(&Arc::new(cover));
        Potential::parse(&r, "x*y").unwrap()
    }

    #[test]
    fn cyclic_module_is_already_mcm() {
        let p = node();
        let s = p.zero_locus();
        let n = PresentedModule::cyclic(s, &[s.parse("x").unwrap()]);
        let st = stabilize(&p, &n, 8).unwrap();
        assert_eq!(st.syzygy_index, 0);
        assert_eq!(st.factorization.phi.to_string(), "1x1 [x]");
        assert_eq!(st.factorization.psi.to_string(), "1x1 [y]");
    }

    #[test]
    fn residue_field_stabilizes_at_first_syzygy() {
        let p = node();
        let s = p.zero_locus();
        let k = PresentedModule::cyclic(s, &[s.parse("x").unwrap(), s.parse("y").unwrap()]);
        let st = stabilize(&p, &k, 8).unwrap();
        assert_eq!(st.syzygy_index, 1);
        assert_eq!(st.factorization.rank(), 2);
        assert!(st.factorization.validate().is_none());
        let x = xi(&st.presentation.to_coherent(), true).unwrap();
        let cmp = ModuleMap::new(x, st.syzygy.clone(), Matrix::identity(s, 2)).unwrap();
        assert!(is_isomorphism(&cmp).unwrap());
    }

    #[test]
    fn free_module_gives_zero() {
        let p = node();
        let st = stabilize(&p, &PresentedModule::free(p.zero_locus(), 2), 8).unwrap();
        assert_eq!(st.factorization.rank(), 0);
    }
}
