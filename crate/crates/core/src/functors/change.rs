use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::{ModuleMap, PresentedModule};
use crate::matrix::Matrix;
use crate::mf::{CoherentFactorization, MatrixFactorization, Potential};
use crate::ring::{PolyRing, Polynomial, Ring, RingPresentation};

/// `φ: R -> R'` given by the images of the variables of `R`.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: Ring,
    pub target: Ring,
    pub images: Vec<Polynomial>,
}

impl RingMap {
    /// Checks that the defining ideal of the source maps to zero.
    pub fn new(source: &Ring, target: &Ring, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.cover().nvars() {
            return Err(Error::InvalidInput("one image per source variable required".into()));
        }
        if source.cover().field != target.cover().field {
            return Err(Error::InvalidInput("ring maps must preserve the coefficient field".into()));
        }
        if images.iter().any(|p| p.ring() != target.cover()) {
            return Err(Error::RingMismatch);
        }
        let f = RingMap { source: source.clone(), target: target.clone(), images };
        for g in source.ideal() {
            if !target.is_zero(&f.apply(g)) {
                return Err(Error::IllDefinedMap(format!("the relation {g} does not map to zero")));
            }
        }
        Ok(f)
    }

    pub fn parse(source: &Ring, target: &Ring, images: &[&str]) -> Result<Self> {
        let im: Result<Vec<Polynomial>> = images.iter().map(|s| target.parse(s)).collect();
        Self::new(source, target, im?)
    }

    pub fn identity(ring: &Ring) -> Self {
        let images = (0..ring.cover().nvars()).map(|i| ring.var(i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        self.target.reduce(&p.substitute(self.target.cover(), &self.images))
    }

    pub fn apply_matrix(&self, m: &Matrix) -> Matrix {
        let data: Vec<Polynomial> = (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| self.apply(m.get(i, j))).collect();
        Matrix::from_row_major(&self.target, m.rows(), m.cols(), data).expect("shape preserved")
    }
}

/// Entrywise base change; a matrix factorization of `φ(w)`.
pub fn pullback(f: &RingMap, m: &MatrixFactorization) -> Result<MatrixFactorization> {
    m.ring().check_same(&f.source)?;
    let p = Potential::new(&f.target, &f.apply(m.potential.w()))?;
    MatrixFactorization::new(&p, f.apply_matrix(&m.phi), f.apply_matrix(&m.psi))
}

/// Underived base change of a coherent factorization (presentations and
/// maps pulled back entrywise).
pub fn pullback_coherent(f: &RingMap, m: &CoherentFactorization) -> Result<CoherentFactorization> {
    m.ring().check_same(&f.source)?;
    let p = Potential::new(&f.target, &f.apply(m.potential.w()))?;
    let m0 = PresentedModule::new(f.apply_matrix(m.m0.relations()), None)?;
    let m1 = PresentedModule::new(f.apply_matrix(m.m1.relations()), None)?;
    CoherentFactorization::new(
        &p,
        ModuleMap::unchecked(m0.clone(), m1.clone(), f.apply_matrix(&m.delta0.matrix))?,
        ModuleMap::unchecked(m1, m0, f.apply_matrix(&m.delta1.matrix))?,
    )
}

/// `R' = R[t]/(f)` with `f` monic in `t` of degree `r`, free over `R` on
/// `1, t, ..., t^{r-1}`. The cover of `R'` is the cover of `R` with `t`
/// appended as the last variable; it carries no grading.
#[derive(Clone, Debug)]
pub struct FiniteExtension {
    pub base: Ring,
    pub top: Ring,
    /// Coefficients of `f` in `t`, lowest first, over the cover of `R`; the
    /// last one is `1`.
    coeffs: Vec<Polynomial>,
}

impl FiniteExtension {
    pub fn new(base: &Ring, t: &str, f: &str) -> Result<Self> {
        let bc = base.cover();
        if bc.var_index(t).is_some() {
            return Err(Error::InvalidInput(format!("variable {t} already exists in the base")));
        }
        let mut vars: Vec<&str> = bc.vars.iter().map(|s| s.as_str()).collect();
        vars.push(t);
        let mut cover = (*PolyRing::new(bc.field.clone(), &vars)).clone();
        let mut precedence = bc.order.precedence.clone();
        precedence.push(bc.nvars());
        cover.order = crate::ring::MonomialOrder { kind: bc.order.kind, precedence };
        let cover = Arc::new(cover);
        let f = crate::ring::parse_polynomial(&cover, f)?;
        let coeffs = t_coefficients(&f, bc);
        let r = coeffs.len().saturating_sub(1);
        if r == 0 || !coeffs[r].is_one() {
            return Err(Error::InvalidInput("the extension polynomial must be monic of positive degree in t".into()));
        }
        let mut ideal: Vec<Polynomial> = base.ideal().iter().map(|g| lift_to(g, &cover)).collect();
        ideal.push(f);
        let top = RingPresentation::new(&cover, ideal)?;
        Ok(FiniteExtension { base: base.clone(), top, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The inclusion `R -> R'`.
    pub fn embed(&self, p: &Polynomial) -> Polynomial {
        self.top.reduce(&lift_to(p, self.top.cover()))
    }

    /// Coordinates of `a ∈ R'` in the basis `1, t, ..., t^{r-1}`.
    pub fn coordinates(&self, a: &Polynomial) -> Vec<Polynomial> {
        let r = self.degree();
        let bc = self.base.cover();
        let mut c = t_coefficients(a, bc);
        c.resize(c.len().max(r), Polynomial::zero(bc));
        for k in (r..c.len()).rev() {
            let lead = std::mem::replace(&mut c[k], Polynomial::zero(bc));
            if lead.is_zero() {
                continue;
            }
            for l in 0..r {
                c[k - r + l] = c[k - r + l].sub(&lead.mul(&self.coeffs[l]));
            }
        }
        c.truncate(r);
        c.iter().map(|p| self.base.reduce(p)).collect()
    }

    /// Matrix of multiplication by `a` on `R'` as a free `R`-module.
    pub fn multiplication_matrix(&self, a: &Polynomial) -> Matrix {
        let r = self.degree();
        let t = self.top.var(self.top.cover().nvars() - 1);
        let cols: Vec<Vec<Polynomial>> = (0..r).map(|k| self.coordinates(&a.mul(&t.pow(k as u32)))).collect();
        Matrix::from_columns(&self.base, r, &cols)
    }

    fn restrict_matrix(&self, m: &Matrix) -> Matrix {
        let r = self.degree();
        let mut out = Matrix::zeros(&self.base, m.rows() * r, m.cols() * r);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let b = self.multiplication_matrix(m.get(i, j));
                for a in 0..r {
                    for c in 0..r {
                        out.set(i * r + a, j * r + c, b.get(a, c).clone());
                    }
                }
            }
        }
        out
    }
}

/// Coefficients in the last variable, over the cover with that variable
/// dropped.
fn t_coefficients(p: &Polynomial, base: &Arc<PolyRing>) -> Vec<Polynomial> {
    let n = base.nvars();
    let mut out: Vec<Vec<_>> = Vec::new();
    for (m, c) in p.terms() {
        let k = m.0[n] as usize;
        if out.len() <= k {
            out.resize_with(k + 1, Vec::new);
        }
        out[k].push((crate::ring::Monomial(m.0[..n].into()), c.clone()));
    }
    out.into_iter().map(|t| Polynomial::from_terms(base, t)).collect()
}

fn lift_to(p: &Polynomial, top: &Arc<PolyRing>) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = m.0.to_vec();
            e.push(0);
            (crate::ring::Monomial(e.into()), c.clone())
        })
        .collect();
    Polynomial::from_terms(top, terms)
}

/// Restriction of scalars along `R -> R'`: each entry becomes its
/// multiplication matrix. `m` must factor the image of `w`.
pub fn pushforward(ext: &FiniteExtension, w: &Potential, m: &MatrixFactorization) -> Result<MatrixFactorization> {
    w.ring().check_same(&ext.base)?;
    m.ring().check_same(&ext.top)?;
    if ext.embed(w.w()) != *m.potential.w() {
        return Err(Error::PotentialMismatch);
    }
    MatrixFactorization::new(w, ext.restrict_matrix(&m.phi), ext.restrict_matrix(&m.psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::is_contractible;
    use crate::ring::Field;

    fn mf(p: &Potential, phi: &str, psi: &str) -> MatrixFactorization {
        let r = p.ring();
        MatrixFactorization::new(p, Matrix::parse_rows(r, &[vec![phi]]).unwrap(), Matrix::parse_rows(r, &[vec![psi]]).unwrap()).unwrap()
    }

    #[test]
    fn pullbacks() {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"]));
        let p = Potential::parse(&r, "x*y").unwrap();
        let m = mf(&p, "x", "y");
        assert!(pullback(&RingMap::identity(&r), &m).unwrap().same(&m));
        let t = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["t"]));
        let diag = pullback(&RingMap::parse(&r, &t, &["t", "t"]).unwrap(), &m).unwrap();
        assert_eq!(diag.phi.to_string(), "1x1 [t]");
        assert_eq!(diag.potential.w().to_string(), "t^2");
        let kx = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x"]));
        let off = pullback(&RingMap::parse(&r, &kx, &["x", "1"]).unwrap(), &m).unwrap();
        assert!(is_contractible(&off.to_coherent()).unwrap());
        let node = r.quotient(&[r.parse("x*y").unwrap()]).unwrap();
        assert!(RingMap::parse(&node, &kx, &["x", "1"]).is_err());
    }

    #[test]
    fn pushforward_along_square_root() {
        let base = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x"]));
        let ext = FiniteExtension::new(&base, "t", "t^2 - x").unwrap();
        let top = &ext.top;
        let pt = Potential::new(top, &ext.embed(&base.parse("x").unwrap())).unwrap();
        let m = mf(&pt, "t", "t");
        let w = Potential::parse(&base, "x").unwrap();
        let pm = pushforward(&ext, &w, &m).unwrap();
        assert_eq!(pm.phi.to_string(), "2x2 [0, x; 1, 0]");
        assert_eq!(pm.psi.to_string(), "2x2 [0, x; 1, 0]");
        let sum = pushforward(&ext, &w, &m.direct_sum(&m).unwrap()).unwrap();
        assert!(sum.same(&pm.direct_sum(&pm).unwrap()));
        let id = FiniteExtension::new(&base, "t", "t").unwrap();
        let pid = Potential::new(&id.top, &id.embed(w.w())).unwrap();
        let m1 = mf(&pid, "x", "1");
        let back = pushforward(&id, &w, &m1).unwrap();
        assert_eq!(back.phi.to_string(), "1x1 [x]");
    }
}
