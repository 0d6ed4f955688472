use std::fmt;

use super::potential::Potential;
use crate::error::{Error, Result};
use crate::homalg::{kernel, ModuleMap, PresentedModule};
use crate::matrix::Matrix;
use crate::ring::{Polynomial, Ring};

/// Which composite of a factorization failed to equal `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// `"phi*psi"` (on `M⁰`) or `"psi*phi"` (on `M¹`).
    pub composite: &'static str,
    /// Offending matrix entry, or `(0, generator)` for coherent objects.
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} differs from w*Id at ({}, {})", self.composite, self.row, self.col)
    }
}

/// `(Φ: R^n -> R^n, Ψ: R^n -> R^n)` with `ΦΨ = ΨΦ = w·Id`; `Φ` is the
/// differential `M¹ -> M⁰` and `Ψ` the differential `M⁰ -> M¹`.
#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    pub potential: Potential,
    pub phi: Matrix,
    pub psi: Matrix,
}

impl MatrixFactorization {
    /// Validated constructor.
    pub fn new(potential: &Potential, phi: Matrix, psi: Matrix) -> Result<Self> {
        let m = Self::unchecked(potential, phi, psi)?;
        if let Some(v) = m.validate() {
            return Err(Error::InvalidInput(format!("not a matrix factorization: {v}")));
        }
        Ok(m)
    }

    /// Checks shapes and rings only.
    pub fn unchecked(potential: &Potential, phi: Matrix, psi: Matrix) -> Result<Self> {
        potential.ring().check_same(phi.ring())?;
        potential.ring().check_same(psi.ring())?;
        if !phi.is_square() || !psi.is_square() || phi.rows() != psi.rows() {
            return Err(Error::InvalidInput("phi and psi must be square of equal size".into()));
        }
        Ok(MatrixFactorization { potential: potential.clone(), phi, psi })
    }

    /// First violated entry of `ΦΨ = w·Id` or `ΨΦ = w·Id`.
    pub fn validate(&self) -> Option<Violation> {
        let w = Matrix::scalar(self.ring(), self.rank(), self.potential.w());
        for (name, prod) in [("phi*psi", self.phi.mul(&self.psi)), ("psi*phi", self.psi.mul(&self.phi))] {
            for i in 0..self.rank() {
                for j in 0..self.rank() {
                    if prod.get(i, j) != w.get(i, j) {
                        return Some(Violation { composite: name, row: i, col: j });
                    }
                }
            }
        }
        None
    }

    pub fn ring(&self) -> &Ring {
        self.potential.ring()
    }

    pub fn rank(&self) -> usize {
        self.phi.rows()
    }

    pub fn zero(potential: &Potential) -> Self {
        let z = Matrix::zeros(potential.ring(), 0, 0);
        MatrixFactorization { potential: potential.clone(), phi: z.clone(), psi: z }
    }

    /// `(Id, w·Id)` (plain) or `(w·Id, Id)` (twisted).
    pub fn trivial(potential: &Potential, n: usize, twisted: bool) -> Self {
        let ring = potential.ring();
        let id = Matrix::identity(ring, n);
        let w = Matrix::scalar(ring, n, potential.w());
        let (phi, psi) = if twisted { (w, id) } else { (id, w) };
        MatrixFactorization { potential: potential.clone(), phi, psi }
    }

    /// `(Φ, Ψ) ↦ (-Ψ, -Φ)`.
    pub fn shift(&self) -> Self {
        MatrixFactorization { potential: self.potential.clone(), phi: self.psi.neg(), psi: self.phi.neg() }
    }

    pub fn direct_sum(&self, other: &MatrixFactorization) -> Result<Self> {
        self.potential.check_same(&other.potential)?;
        Ok(MatrixFactorization {
            potential: self.potential.clone(),
            phi: self.phi.block_diag(&other.phi),
            psi: self.psi.block_diag(&other.psi),
        })
    }

    /// `(Φ, Ψ) ↦ (Ψᵀ, -Φᵀ)`, a factorization of `-w`. Applying it twice
    /// gives `(-Φ, -Ψ)`; see [`MatrixFactorization::normalize_sign`].
    pub fn dual(&self) -> Self {
        MatrixFactorization {
            potential: self.potential.opposite(),
            phi: self.psi.transpose(),
            psi: self.phi.transpose().neg(),
        }
    }

    /// `(Φ, Ψ) ↦ (-Φ, -Ψ)`, the isomorphism `(Id, -Id)` applied to the pair
    /// produced by a double dual.
    pub fn normalize_sign(&self) -> Self {
        MatrixFactorization { potential: self.potential.clone(), phi: self.phi.neg(), psi: self.psi.neg() }
    }

    /// Equal matrices over the same potential.
    pub fn same(&self, other: &MatrixFactorization) -> bool {
        self.potential.same(&other.potential) && self.phi.same(&other.phi) && self.psi.same(&other.psi)
    }

    pub fn to_coherent(&self) -> CoherentFactorization {
        let ring = self.ring();
        let f = PresentedModule::free(ring, self.rank());
        CoherentFactorization {
            potential: self.potential.clone(),
            m0: f.clone(),
            m1: f.clone(),
            delta0: ModuleMap { source: f.clone(), target: f.clone(), matrix: self.psi.clone() },
            delta1: ModuleMap { source: f.clone(), target: f, matrix: self.phi.clone() },
        }
    }

    /// Splits off summands `(u, w/u)` and `(w/u, u)` with `u` a unit
    /// constant until neither matrix has a unit entry. The result is
    /// isomorphic to the input modulo contractible summands.
    pub fn minimize(&self) -> Self {
        let mut phi = self.phi.clone();
        let mut psi = self.psi.clone();
        loop {
            if let Some((i, j)) = phi.find_unit() {
                (phi, psi) = split_unit(&phi, &psi, i, j);
            } else if let Some((i, j)) = psi.find_unit() {
                (psi, phi) = split_unit(&psi, &phi, i, j);
            } else {
                break;
            }
        }
        MatrixFactorization { potential: self.potential.clone(), phi, psi }
    }
}

/// Clears row `i` and column `j` of `a` around the unit `a[i][j]` by base
/// changes `a ↦ P a Q⁻¹`, `b ↦ Q b P⁻¹`, then deletes the `(u, w/u)` block.
fn split_unit(a: &Matrix, b: &Matrix, i: usize, j: usize) -> (Matrix, Matrix) {
    let ring = a.ring().clone();
    let field = &ring.cover().field;
    let n = a.rows();
    let mut a = a.clone();
    let mut b = b.clone();
    let uinv = field.inv(&a.get(i, j).constant_coeff());
    // Row ops on a: row_r -= c row_i, compensated on b by col_i += c col_r.
    for r in (0..n).filter(|&r| r != i) {
        let c = a.get(r, j).scale(&uinv);
        if c.is_zero() {
            continue;
        }
        for k in 0..n {
            let v = ring.reduce(&a.get(r, k).sub(&c.mul(a.get(i, k))));
            a.set(r, k, v);
            let v = ring.reduce(&b.get(k, i).add(&c.mul(b.get(k, r))));
            b.set(k, i, v);
        }
    }
    // Column ops on a: col_k -= c col_j, compensated on b by row_j += c row_k.
    for k in (0..n).filter(|&k| k != j) {
        let c = a.get(i, k).scale(&uinv);
        if c.is_zero() {
            continue;
        }
        for r in 0..n {
            let v = ring.reduce(&a.get(r, k).sub(&c.mul(a.get(r, j))));
            a.set(r, k, v);
            let v = ring.reduce(&b.get(j, r).add(&c.mul(b.get(k, r))));
            b.set(j, r, v);
        }
    }
    let rows_a: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let cols_a: Vec<usize> = (0..n).filter(|&k| k != j).collect();
    (a.submatrix(&rows_a, &cols_a), b.submatrix(&cols_a, &rows_a))
}

/// `δ₀: M⁰ -> M¹`, `δ₁: M¹ -> M⁰` between finitely presented modules with
/// both composites equal to `w`.
#[derive(Clone, Debug)]
pub struct CoherentFactorization {
    pub potential: Potential,
    pub m0: PresentedModule,
    pub m1: PresentedModule,
    pub delta0: ModuleMap,
    pub delta1: ModuleMap,
}

impl CoherentFactorization {
    pub fn new(potential: &Potential, delta0: ModuleMap, delta1: ModuleMap) -> Result<Self> {
        let m = Self::unchecked(potential, delta0, delta1)?;
        m.delta0.check_well_defined()?;
        m.delta1.check_well_defined()?;
        if let Some(v) = m.validate()? {
            return Err(Error::InvalidInput(format!("not a coherent factorization: {v}")));
        }
        Ok(m)
    }

    pub fn unchecked(potential: &Potential, delta0: ModuleMap, delta1: ModuleMap) -> Result<Self> {
        potential.ring().check_same(delta0.ring())?;
        potential.ring().check_same(delta1.ring())?;
        if delta0.source.gens() != delta1.target.gens() || delta0.target.gens() != delta1.source.gens() {
            return Err(Error::InvalidInput("delta0 and delta1 must run between the same components".into()));
        }
        Ok(CoherentFactorization {
            potential: potential.clone(),
            m0: delta0.source.clone(),
            m1: delta0.target.clone(),
            delta0,
            delta1,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.potential.ring()
    }

    /// First generator on which a composite differs from `w` modulo the
    /// relations.
    pub fn validate(&self) -> Result<Option<Violation>> {
        let w = self.potential.w();
        let checks = [
            ("phi*psi", &self.m0, self.delta1.matrix.mul(&self.delta0.matrix)),
            ("psi*phi", &self.m1, self.delta0.matrix.mul(&self.delta1.matrix)),
        ];
        for (name, m, prod) in checks {
            let diff = prod.sub(&Matrix::scalar(self.ring(), m.gens(), w));
            for (k, c) in diff.columns().iter().enumerate() {
                if !m.is_zero_element(c)? {
                    return Ok(Some(Violation { composite: name, row: 0, col: k }));
                }
            }
        }
        Ok(None)
    }

    /// Components with zero relations turn into a matrix factorization.
    pub fn as_matrix_factorization(&self) -> Option<MatrixFactorization> {
        if !self.m0.is_free_presentation() || !self.m1.is_free_presentation() || self.m0.gens() != self.m1.gens() {
            return None;
        }
        MatrixFactorization::unchecked(&self.potential, self.delta1.matrix.clone(), self.delta0.matrix.clone()).ok()
    }

    pub fn zero(potential: &Potential) -> Self {
        MatrixFactorization::zero(potential).to_coherent()
    }

    pub fn shift(&self) -> Self {
        let neg = |f: &ModuleMap| ModuleMap { source: f.source.clone(), target: f.target.clone(), matrix: f.matrix.neg() };
        CoherentFactorization {
            potential: self.potential.clone(),
            m0: self.m1.clone(),
            m1: self.m0.clone(),
            delta0: neg(&self.delta1),
            delta1: neg(&self.delta0),
        }
    }

    pub fn direct_sum(&self, other: &CoherentFactorization) -> Result<Self> {
        self.potential.check_same(&other.potential)?;
        Ok(CoherentFactorization {
            potential: self.potential.clone(),
            m0: self.m0.direct_sum(&other.m0)?,
            m1: self.m1.direct_sum(&other.m1)?,
            delta0: self.delta0.direct_sum(&other.delta0)?,
            delta1: self.delta1.direct_sum(&other.delta1)?,
        })
    }

    /// Multiplication by `w` is injective on both components.
    pub fn is_w_flat(&self) -> Result<bool> {
        for m in [&self.m0, &self.m1] {
            let w = Matrix::scalar(self.ring(), m.gens(), self.potential.w());
            let (k, _) = kernel(&ModuleMap::unchecked(m.clone(), m.clone(), w)?)?;
            if !k.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiplication by `r` on both components, a closed degree-0 map.
    pub fn scalar_matrices(&self, r: &Polynomial) -> (Matrix, Matrix) {
        (Matrix::scalar(self.ring(), self.m0.gens(), r), Matrix::scalar(self.ring(), self.m1.gens(), r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, PolyRing, RingPresentation};

    fn node() -> Potential {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"]));
        Potential::parse(&r, "x*y").unwrap()
    }

    fn mf(p: &Potential, phi: &[Vec<&str>], psi: &[Vec<&str>]) -> Result<MatrixFactorization> {
        let r = p.ring();
        MatrixFactorization::new(p, Matrix::parse_rows(r, phi)?, Matrix::parse_rows(r, psi)?)
    }

    #[test]
    fn validation() {
        let p = node();
        assert!(mf(&p, &[vec!["x"]], &[vec!["y"]]).is_ok());
        let bad = MatrixFactorization::unchecked(
            &p,
            Matrix::parse_rows(p.ring(), &[vec!["x"]]).unwrap(),
            Matrix::parse_rows(p.ring(), &[vec!["x"]]).unwrap(),
        )
        .unwrap();
        assert_eq!(bad.validate(), Some(Violation { composite: "phi*psi", row: 0, col: 0 }));
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y", "z"]));
        let a1 = Potential::parse(&r, "x^2 + y*z").unwrap();
        assert!(mf(&a1, &[vec!["x", "y"], vec!["-z", "x"]], &[vec!["x", "-y"], vec!["z", "x"]]).is_ok());
    }

    #[test]
    fn shift_dual_sum() {
        let p = node();
        let m = mf(&p, &[vec!["x"]], &[vec!["y"]]).unwrap();
        assert!(m.shift().validate().is_none());
        assert!(m.shift().shift().same(&m));
        let d = m.dual();
        assert_eq!(d.phi.to_string(), "1x1 [y]");
        assert_eq!(d.psi.to_string(), "1x1 [-x]");
        assert!(d.validate().is_none());
        assert!(d.dual().normalize_sign().same(&m));
        let s = m.direct_sum(&m.shift()).unwrap();
        assert_eq!(s.rank(), 2);
        assert!(s.validate().is_none());
        let t = MatrixFactorization::trivial(&p, 1, false);
        assert_eq!(t.psi.to_string(), "1x1 [x*y]");
        assert!(t.shift().normalize_sign().same(&MatrixFactorization::trivial(&p, 1, true)));
    }

    #[test]
    fn minimize_splits_unit_blocks() {
        let p = node();
        let m = mf(&p, &[vec!["x"]], &[vec!["y"]]).unwrap();
        let big = m.direct_sum(&MatrixFactorization::trivial(&p, 2, false)).unwrap();
        let big = big.direct_sum(&MatrixFactorization::trivial(&p, 1, true)).unwrap();
        let small = big.minimize();
        assert!(small.validate().is_none());
        assert_eq!(small.rank(), 1);
        // Conjugated copy of the trivial block.
        let t = mf(&p, &[vec!["1", "x"], vec!["0", "1"]], &[vec!["x*y", "-x^2*y"], vec!["0", "x*y"]]).unwrap();
        assert_eq!(t.minimize().rank(), 0);
    }

    #[test]
    fn coherent_round_trip() {
        let p = node();
        let m = mf(&p, &[vec!["x"]], &[vec!["y"]]).unwrap();
        let c = m.to_coherent();
        assert_eq!(c.validate().unwrap(), None);
        assert!(c.is_w_flat().unwrap());
        assert!(c.as_matrix_factorization().unwrap().same(&m));
        assert!(c.shift().as_matrix_factorization().unwrap().same(&m.shift()));
    }
}
