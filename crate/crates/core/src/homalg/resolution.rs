use std::fmt;

use super::linalg::{self, column_degree, minimal_generators};
use super::module::{ModuleMap, PresentedModule};
use super::ops::prune;
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::matrix::Matrix;
use crate::ring::{Polynomial, Ring, RingPresentation};

/// `... -> F_2 -d_2-> F_1 -d_1-> F_0 -> M -> 0`, with `maps[i] = d_{i+1}`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ring: Ring,
    /// The presentation actually resolved, isomorphic to the input.
    pub module: PresentedModule,
    /// `module -> input`.
    pub comparison: ModuleMap,
    pub maps: Vec<Matrix>,
    /// Generator degrees of `F_0, F_1, ...` when graded.
    pub degrees: Option<Vec<Vec<i64>>>,
    pub minimal: bool,
    /// The kernel of the last map is zero.
    pub complete: bool,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Ranks of `F_0, F_1, ...`.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![self.module.gens()];
        b.extend(self.maps.iter().map(|d| d.cols()));
        b
    }

    /// Checks `d_i d_{i+1} = 0`, `ker d_i = im d_{i+1}` and, when complete,
    /// injectivity of the last map.
    pub fn verify(&self) -> Result<bool> {
        for i in 0..self.maps.len() {
            let d = &self.maps[i];
            let syz = linalg::syzygies(&self.ring, d.rows(), &d.columns())?;
            match self.maps.get(i + 1) {
                Some(next) => {
                    if !d.mul(next).is_zero() {
                        return Ok(false);
                    }
                    let gb = self.ring.submodule_gb(next.rows(), &next.columns())?;
                    if !syz.iter().all(|s| gb.contains(s)) {
                        return Ok(false);
                    }
                }
                None if self.complete && !syz.is_empty() => return Ok(false),
                None => {}
            }
        }
        Ok(true)
    }
}

/// Resolves `m` up to `max_len` maps. `minimal` requires a graded module and
/// yields the minimal graded resolution; otherwise each step keeps an
/// irredundant generating set of the kernel.
pub fn free_resolution(m: &PresentedModule, max_len: usize, minimal: bool) -> Result<FreeResolution> {
    let ring = m.ring().clone();
    let grading = m.grading();
    if minimal && grading.is_none() {
        return Err(Error::Ungraded("minimal resolution needs a graded module".into()));
    }
    let p = prune(m)?;
    let module = p.module.clone();
    let mut degrees = module.grading().map(|d| vec![d]);
    let mut maps = Vec::new();
    let mut current = module.relations().clone();
    let mut complete = false;
    loop {
        if current.cols() == 0 {
            complete = true;
            break;
        }
        if maps.len() == max_len {
            break;
        }
        let row_deg = degrees.as_ref().map(|d| d.last().unwrap().clone());
        if let (Some(all), Some(rd)) = (degrees.as_mut(), row_deg.as_ref()) {
            let cd: Vec<i64> = current.columns().iter().map(|c| column_degree(&ring, c, rd).unwrap_or(0)).collect();
            all.push(cd);
        }
        let col_deg = degrees.as_ref().map(|d| d.last().unwrap().clone());
        let syz = linalg::syzygies(&ring, current.rows(), &current.columns())?;
        let kept = minimal_generators(&ring, current.cols(), &syz, &[], col_deg.as_deref())?;
        let next = Matrix::from_columns(&ring, current.cols(), &kept);
        maps.push(current);
        current = next;
    }
    Ok(FreeResolution { ring, module, comparison: p.to_old, maps, degrees, minimal, complete })
}

/// Why a module has infinite projective dimension.
#[derive(Clone, Debug, PartialEq)]
pub enum NonPerfectCertificate {
    /// Over `P/(f)` the square maps `d_i, d_{i+1}` of a minimal resolution
    /// lift to a matrix factorization `(phi, psi)` of `f` over `P` with the
    /// same images, so the resolution repeats forever with nonzero ranks.
    HypersurfacePair { index: usize, phi: Matrix, psi: Matrix },
    /// `im d_{i+2} = im d_i` inside the same free module, so the syzygies
    /// `Ω^{i+1} ≅ Ω^{i-1}` recur and never vanish.
    ImageRepetition { index: usize },
}

impl fmt::Display for NonPerfectCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonPerfectCertificate::HypersurfacePair { index, .. } => write!(f, "factorization pair at d{}", index),
            NonPerfectCertificate::ImageRepetition { index } => write!(f, "image repetition at d{}", index),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Perfectness {
    Yes(usize),
    No(NonPerfectCertificate),
    Unknown,
}

/// Decides finite projective dimension from the minimal graded resolution
/// computed up to `bound` maps (plus two more to look for a certificate).
pub fn is_perfect(m: &PresentedModule, bound: usize) -> Result<Perfectness> {
    if !m.ring().is_graded() || m.grading().is_none() {
        return Err(Error::Ungraded("perfectness test needs a graded module".into()));
    }
    let res = free_resolution(m, bound, true)?;
    if res.complete {
        return Ok(Perfectness::Yes(res.length()));
    }
    Ok(match periodicity_certificate(&res)? {
        Some(c) => Perfectness::No(c),
        None => Perfectness::Unknown,
    })
}

/// Searches a minimal resolution for the first non-perfectness certificate.
pub fn periodicity_certificate(res: &FreeResolution) -> Result<Option<NonPerfectCertificate>> {
    if !res.minimal {
        return Ok(None);
    }
    let d = &res.maps;
    for i in 0..d.len() {
        if i + 1 < d.len() {
            if let Some((phi, psi)) = hypersurface_pair(&res.ring, &d[i], &d[i + 1])? {
                return Ok(Some(NonPerfectCertificate::HypersurfacePair { index: i + 1, phi, psi }));
            }
        }
        if i + 2 < d.len() && same_image(&res.ring, &d[i], &d[i + 2])? {
            return Ok(Some(NonPerfectCertificate::ImageRepetition { index: i + 1 }));
        }
    }
    Ok(None)
}

fn same_image(ring: &Ring, a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() == 0 {
        return Ok(false);
    }
    let ga = ring.submodule_gb(a.rows(), &a.columns())?;
    let gb = ring.submodule_gb(b.rows(), &b.columns())?;
    Ok(b.columns().iter().all(|c| ga.contains(c)) && a.columns().iter().all(|c| gb.contains(c)))
}

/// For `R = P/(f)` and nonzero square `a, b` with `ab = 0` in `R`, writes
/// `ab = f C` over `P`; if `C` is invertible returns `(a, b C^{-1})`, a
/// matrix factorization of `f` over `P`.
pub fn hypersurface_pair(ring: &Ring, a: &Matrix, b: &Matrix) -> Result<Option<(Matrix, Matrix)>> {
    let ideal = ring.ideal_gb().polys();
    if ideal.len() != 1 {
        return Ok(None);
    }
    factor_pair(&RingPresentation::polynomial(ring.cover()), &ideal[0], a, b)
}

/// Lifts square `a, b` (over any presentation with the cover of `base`) to
/// `base`, writes `ab = w C` there and, when `C` is invertible, returns the
/// factorization `(a, b C^{-1})` of `w` over `base` after checking both
/// composites.
pub fn factor_pair(base: &Ring, w: &Polynomial, a: &Matrix, b: &Matrix) -> Result<Option<(Matrix, Matrix)>> {
    let n = a.rows();
    if n == 0 || !a.is_square() || !b.is_square() || b.rows() != n {
        return Ok(None);
    }
    let (a, b) = (a.over(base)?, b.over(base)?);
    let prod = a.mul(&b);
    let div = linalg::Solver::new(base, 1, &[vec![w.clone()]])?;
    let mut c_cols: Vec<Vector> = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            match div.solve(&[prod.get(i, j).clone()]) {
                Some(q) => col.push(q[0].clone()),
                None => return Ok(None),
            }
        }
        c_cols.push(col);
    }
    let inv = linalg::Solver::new(base, n, &c_cols)?;
    let mut inv_cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vector = (0..n).map(|i| if i == j { base.one() } else { base.zero() }).collect();
        match inv.solve(&e) {
            Some(v) => inv_cols.push(v),
            None => return Ok(None),
        }
    }
    let psi = b.mul(&Matrix::from_columns(base, n, &inv_cols));
    let wi = Matrix::scalar(base, n, w);
    if !a.mul(&psi).same(&wi) || !psi.mul(&a).same(&wi) {
        return Ok(None);
    }
    Ok(Some((a, psi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, PolyRing};
    use std::sync::Arc;

    fn graded_ring(vars: &[&str]) -> Ring {
        let mut cover = (*PolyRing::new(Field::Rational, vars)).clone();
        cover.weights = Some(vec![1; vars.len()]);
        RingPresentation::polynomial(&Arc::new(cover))
    }

    #[test]
    fn cyclic_over_regular_ring() {
        let r = graded_ring(&["x", "y"]);
        let m = PresentedModule::cyclic(&r, &[r.parse("x").unwrap()]);
        let res = free_resolution(&m, 5, true).unwrap();
        assert!(res.complete);
        assert_eq!(res.length(), 1);
        assert!(res.verify().unwrap());
        assert_eq!(is_perfect(&m, 5).unwrap(), Perfectness::Yes(1));
    }

    #[test]
    fn free_module_has_length_zero() {
        let r = graded_ring(&["x", "y"]);
        let m = PresentedModule::free(&r, 2);
        let res = free_resolution(&m, 5, true).unwrap();
        assert!(res.complete);
        assert_eq!(res.length(), 0);
        assert_eq!(is_perfect(&m, 5).unwrap(), Perfectness::Yes(0));
    }

    #[test]
    fn residue_field_over_node_is_periodic() {
        let r = graded_ring(&["x", "y"]);
        let s = r.quotient(&[r.parse("x*y").unwrap()]).unwrap();
        let k = PresentedModule::cyclic(&s, &[s.parse("x").unwrap(), s.parse("y").unwrap()]);
        let res = free_resolution(&k, 4, true).unwrap();
        assert_eq!(res.betti(), vec![1, 2, 2, 2, 2]);
        assert!(!res.complete);
        assert!(res.verify().unwrap());
        assert!(res.maps.iter().all(|d| d.find_unit().is_none()));
        match is_perfect(&k, 4).unwrap() {
            Perfectness::No(NonPerfectCertificate::HypersurfacePair { index, phi, psi }) => {
                assert_eq!(index, 2);
                assert_eq!(phi.rows(), 2);
                assert!(phi.mul(&psi).same(&Matrix::scalar(phi.ring(), 2, &phi.ring().parse("x*y").unwrap())));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn residue_field_over_a1_surface() {
        let r = graded_ring(&["x", "y", "z"]);
        let s = r.quotient(&[r.parse("x^2 + y*z").unwrap()]).unwrap();
        let gens: Vec<Polynomial> = ["x", "y", "z"].iter().map(|v| s.parse(v).unwrap()).collect();
        let k = PresentedModule::cyclic(&s, &gens);
        let res = free_resolution(&k, 4, true).unwrap();
        assert_eq!(res.betti(), vec![1, 3, 4, 4, 4]);
        assert!(res.verify().unwrap());
        assert!(matches!(
            periodicity_certificate(&res).unwrap(),
            Some(NonPerfectCertificate::HypersurfacePair { index: 3, .. })
        ));
    }

    #[test]
    fn ungraded_input_is_rejected() {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x"]));
        let m = PresentedModule::cyclic(&r, &[r.parse("x").unwrap()]);
        assert!(matches!(is_perfect(&m, 3), Err(Error::Ungraded(_))));
    }
}
