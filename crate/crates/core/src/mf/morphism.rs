use super::factorization::{CoherentFactorization, MatrixFactorization};
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::homalg::linalg::Solver;
use crate::homalg::{kernel, ModuleMap, PresentedModule};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// A homogeneous morphism of factorizations. Degree 0: `f0: M⁰ -> N⁰`,
/// `f1: M¹ -> N¹`. Degree 1: `f0: M⁰ -> N¹`, `f1: M¹ -> N⁰`.
#[derive(Clone, Debug)]
pub struct MFMorphism {
    pub source: CoherentFactorization,
    pub target: CoherentFactorization,
    pub degree: u8,
    pub f0: Matrix,
    pub f1: Matrix,
}

fn targets(n: &CoherentFactorization, degree: u8) -> (&PresentedModule, &PresentedModule) {
    if degree == 0 {
        (&n.m0, &n.m1)
    } else {
        (&n.m1, &n.m0)
    }
}

impl MFMorphism {
    /// Checks that both components are well defined on the presentations.
    pub fn new(source: &CoherentFactorization, target: &CoherentFactorization, degree: u8, f0: Matrix, f1: Matrix) -> Result<Self> {
        let f = Self::unchecked(source, target, degree, f0, f1)?;
        f.component(0)?.check_well_defined()?;
        f.component(1)?.check_well_defined()?;
        Ok(f)
    }

    pub fn unchecked(source: &CoherentFactorization, target: &CoherentFactorization, degree: u8, f0: Matrix, f1: Matrix) -> Result<Self> {
        source.potential.check_same(&target.potential)?;
        if degree > 1 {
            return Err(Error::InvalidInput("morphism degree must be 0 or 1".into()));
        }
        let f = MFMorphism { source: source.clone(), target: target.clone(), degree, f0, f1 };
        f.component(0)?;
        f.component(1)?;
        Ok(f)
    }

    pub fn between_matrix(source: &MatrixFactorization, target: &MatrixFactorization, degree: u8, f0: Matrix, f1: Matrix) -> Result<Self> {
        Self::unchecked(&source.to_coherent(), &target.to_coherent(), degree, f0, f1)
    }

    pub fn identity(m: &CoherentFactorization) -> Self {
        let (a, b) = m.scalar_matrices(&m.ring().one());
        MFMorphism { source: m.clone(), target: m.clone(), degree: 0, f0: a, f1: b }
    }

    pub fn zero(source: &CoherentFactorization, target: &CoherentFactorization, degree: u8) -> Result<Self> {
        let (t0, t1) = targets(target, degree);
        let ring = source.ring();
        Self::unchecked(
            source,
            target,
            degree,
            Matrix::zeros(ring, t0.gens(), source.m0.gens()),
            Matrix::zeros(ring, t1.gens(), source.m1.gens()),
        )
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    /// Component `k` as a map of presented modules.
    pub fn component(&self, k: usize) -> Result<ModuleMap> {
        let (t0, t1) = targets(&self.target, self.degree);
        match k {
            0 => ModuleMap::unchecked(self.source.m0.clone(), t0.clone(), self.f0.clone()),
            _ => ModuleMap::unchecked(self.source.m1.clone(), t1.clone(), self.f1.clone()),
        }
    }

    /// `d(f) = δ_N f - (-1)^{|f|} f δ_M`, of the opposite degree.
    pub fn differential(&self) -> MFMorphism {
        let (m, n) = (&self.source, &self.target);
        let (phi_m, psi_m) = (&m.delta1.matrix, &m.delta0.matrix);
        let (phi_n, psi_n) = (&n.delta1.matrix, &n.delta0.matrix);
        let (f0, f1) = (&self.f0, &self.f1);
        let (g0, g1) = if self.degree == 0 {
            (psi_n.mul(f0).sub(&f1.mul(psi_m)), phi_n.mul(f1).sub(&f0.mul(phi_m)))
        } else {
            (phi_n.mul(f0).add(&f1.mul(psi_m)), psi_n.mul(f1).add(&f0.mul(phi_m)))
        };
        MFMorphism { source: m.clone(), target: n.clone(), degree: 1 - self.degree, f0: g0, f1: g1 }
    }

    /// Zero modulo the target relations.
    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.component(0)?.is_zero()? && self.component(1)?.is_zero()?)
    }

    pub fn is_closed(&self) -> Result<bool> {
        self.component(0)?.check_well_defined()?;
        self.component(1)?.check_well_defined()?;
        self.differential().is_zero()
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &MFMorphism) -> Result<MFMorphism> {
        let (a0, a1) = if self.degree == 0 { (&after.f0, &after.f1) } else { (&after.f1, &after.f0) };
        MFMorphism::unchecked(
            &self.source,
            &after.target,
            (self.degree + after.degree) % 2,
            a0.try_mul(&self.f0)?,
            a1.try_mul(&self.f1)?,
        )
    }

    pub fn sub(&self, other: &MFMorphism) -> Result<MFMorphism> {
        MFMorphism::unchecked(&self.source, &self.target, self.degree, self.f0.try_sub(&other.f0)?, self.f1.try_sub(&other.f1)?)
    }

    /// `h` of the opposite degree with `d(h) = f`, or `None`. Decided by one
    /// linear lift problem over the base ring: the unknowns are the entries
    /// of `h`, and each well-definedness or equality-mod-relations
    /// constraint gets slack columns spanned by the relevant relations.
    pub fn null_homotopy(&self) -> Result<Option<MFMorphism>> {
        let (m, n) = (&self.source, &self.target);
        let ring = self.ring().clone();
        let hdeg = 1 - self.degree;
        let (h0t, h1t) = targets(n, hdeg);
        let (d0t, d1t) = targets(n, self.degree);
        let shapes = [(h0t.gens(), m.m0.gens()), (h1t.gens(), m.m1.gens())];
        let probe = |h0: Matrix, h1: Matrix| -> Vector {
            let h = MFMorphism { source: m.clone(), target: n.clone(), degree: hdeg, f0: h0, f1: h1 };
            let d = h.differential();
            let mut v = d.f0.flatten();
            v.extend(d.f1.flatten());
            v.extend(h.f0.mul(m.m0.relations()).flatten());
            v.extend(h.f1.mul(m.m1.relations()).flatten());
            v
        };
        let zero = |(r, c): (usize, usize)| Matrix::zeros(&ring, r, c);
        let mut cols: Vec<Vector> = Vec::new();
        for which in 0..2 {
            let (r, c) = shapes[which];
            for j in 0..c {
                for i in 0..r {
                    let mut e = zero((r, c));
                    e.set(i, j, ring.one());
                    cols.push(if which == 0 { probe(e, zero(shapes[1])) } else { probe(zero(shapes[0]), e) });
                }
            }
        }
        // Slack: block (rows x k) of the equation vector may absorb anything
        // in the column span of `rel` (rows x _), column by column.
        let blocks = [
            (d0t, m.m0.gens()),
            (d1t, m.m1.gens()),
            (h0t, m.m0.relations().cols()),
            (h1t, m.m1.relations().cols()),
        ];
        let total: usize = blocks.iter().map(|(t, k)| t.gens() * k).sum();
        let mut offset = 0;
        for (t, k) in blocks {
            let rows = t.gens();
            for rel in t.relations().columns() {
                for col in 0..k {
                    let mut v: Vector = (0..total).map(|_| ring.zero()).collect();
                    for (i, p) in rel.iter().enumerate() {
                        v[offset + col * rows + i] = p.clone();
                    }
                    cols.push(v);
                }
            }
            offset += rows * k;
        }
        let mut target = self.f0.flatten();
        target.extend(self.f1.flatten());
        target.extend((target.len()..total).map(|_| ring.zero()));
        if cols.is_empty() {
            return Ok(target.iter().all(|p| p.is_zero()).then(|| {
                MFMorphism { source: m.clone(), target: n.clone(), degree: hdeg, f0: zero(shapes[0]), f1: zero(shapes[1]) }
            }));
        }
        let solver = Solver::new(&ring, total, &cols)?;
        let Some(x) = solver.solve(&target) else { return Ok(None) };
        let n0 = shapes[0].0 * shapes[0].1;
        let n1 = shapes[1].0 * shapes[1].1;
        let h0 = Matrix::unflatten(&ring, shapes[0].0, shapes[0].1, &x[..n0]);
        let h1 = Matrix::unflatten(&ring, shapes[1].0, shapes[1].1, &x[n0..n0 + n1]);
        Ok(Some(MFMorphism { source: m.clone(), target: n.clone(), degree: hdeg, f0: h0, f1: h1 }))
    }

    /// Standard cone of a closed degree-0 morphism `f: M -> N`:
    /// `C⁰ = N⁰ ⊕ M¹`, `C¹ = N¹ ⊕ M⁰`, `Φ_C = [Φ_N f0; 0 -Ψ_M]`,
    /// `Ψ_C = [Ψ_N f1; 0 -Φ_M]`.
    pub fn cone(&self, require_closed: bool) -> Result<CoherentFactorization> {
        if self.degree != 0 {
            return Err(Error::InvalidInput("cone needs a degree-0 morphism".into()));
        }
        if require_closed && !self.is_closed()? {
            return Err(Error::NotClosed);
        }
        let (m, n) = (&self.source, &self.target);
        let ring = self.ring();
        let c0 = n.m0.direct_sum(&m.m1)?;
        let c1 = n.m1.direct_sum(&m.m0)?;
        let (phi_m, psi_m) = (m.delta1.matrix.neg(), m.delta0.matrix.neg());
        let phi = Matrix::blocks(
            ring,
            &[&[Some(&n.delta1.matrix), Some(&self.f0)], &[None, Some(&psi_m)]],
            &[n.m0.gens(), m.m1.gens()],
            &[n.m1.gens(), m.m0.gens()],
        );
        let psi = Matrix::blocks(
            ring,
            &[&[Some(&n.delta0.matrix), Some(&self.f1)], &[None, Some(&phi_m)]],
            &[n.m1.gens(), m.m0.gens()],
            &[n.m0.gens(), m.m1.gens()],
        );
        CoherentFactorization::unchecked(
            &m.potential,
            ModuleMap::unchecked(c0.clone(), c1.clone(), psi)?,
            ModuleMap::unchecked(c1, c0, phi)?,
        )
    }
}

impl MFMorphism {
    /// Componentwise kernel of a closed degree-0 morphism, with the
    /// restricted differentials and the inclusion.
    pub fn kernel(&self) -> Result<(CoherentFactorization, MFMorphism)> {
        if self.degree != 0 {
            return Err(Error::InvalidInput("kernel needs a degree-0 morphism".into()));
        }
        let (k0, i0) = kernel(&self.component(0)?)?;
        let (k1, i1) = kernel(&self.component(1)?)?;
        let m = &self.source;
        let restrict = |d: &Matrix, from: &ModuleMap, into: &ModuleMap| -> Result<Matrix> {
            let amb = &into.target;
            let mut cols = into.matrix.columns();
            let nk = cols.len();
            cols.extend(amb.relations().columns());
            let ring = self.ring();
            let mut out = Vec::new();
            if from.matrix.cols() > 0 {
                let solver = Solver::new(ring, amb.gens(), &cols)?;
                for c in from.matrix.columns() {
                    let v = d.apply(&c);
                    let x = solver
                        .solve(&v)
                        .ok_or_else(|| Error::Internal("differential leaves the kernel; morphism not closed".into()))?;
                    out.push(x[..nk].to_vec());
                }
            }
            Ok(Matrix::from_columns(ring, nk, &out))
        };
        let d1 = restrict(&m.delta1.matrix, &i1, &i0)?;
        let d0 = restrict(&m.delta0.matrix, &i0, &i1)?;
        let k = CoherentFactorization::unchecked(
            &m.potential,
            ModuleMap::unchecked(k0.clone(), k1.clone(), d0)?,
            ModuleMap::unchecked(k1, k0, d1)?,
        )?;
        let incl = MFMorphism::unchecked(&k, m, 0, i0.matrix, i1.matrix)?;
        Ok((k, incl))
    }
}

/// Contractible iff the identity is null-homotopic.
pub fn is_contractible(m: &CoherentFactorization) -> Result<bool> {
    Ok(MFMorphism::identity(m).null_homotopy()?.is_some())
}

/// Contracting homotopy of the identity, if one exists.
pub fn contracting_homotopy(m: &CoherentFactorization) -> Result<Option<MFMorphism>> {
    MFMorphism::identity(m).null_homotopy()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::Potential;
    use crate::ring::{Field, PolyRing, RingPresentation};

    fn node() -> (Potential, MatrixFactorization) {
        let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"]));
        let p = Potential::parse(&r, "x*y").unwrap();
        let m = MatrixFactorization::new(
            &p,
            Matrix::parse_rows(&r, &[vec!["x"]]).unwrap(),
            Matrix::parse_rows(&r, &[vec!["y"]]).unwrap(),
        )
        .unwrap();
        (p, m)
    }

    #[test]
    fn closedness() {
        let (p, m) = node();
        let c = m.to_coherent();
        assert!(MFMorphism::identity(&c).is_closed().unwrap());
        let (a, b) = c.scalar_matrices(&p.ring().parse("x + y^2").unwrap());
        assert!(MFMorphism::new(&c, &c, 0, a, b).unwrap().is_closed().unwrap());
        let r = p.ring();
        let f = MFMorphism::new(&c, &c, 0, Matrix::identity(r, 1), Matrix::zeros(r, 1, 1)).unwrap();
        assert!(!f.is_closed().unwrap());
    }

    #[test]
    fn differential_squares_to_zero() {
        let (p, m) = node();
        let c = m.to_coherent();
        let r = p.ring();
        let f = MFMorphism::new(&c, &c, 0, Matrix::parse_rows(r, &[vec!["x^2"]]).unwrap(), Matrix::parse_rows(r, &[vec!["y+1"]]).unwrap()).unwrap();
        assert!(f.differential().differential().is_zero().unwrap());
    }

    #[test]
    fn contractibility() {
        let (p, m) = node();
        assert!(!is_contractible(&m.to_coherent()).unwrap());
        for n in 0..3 {
            assert!(is_contractible(&MatrixFactorization::trivial(&p, n, false).to_coherent()).unwrap());
            assert!(is_contractible(&MatrixFactorization::trivial(&p, n, true).to_coherent()).unwrap());
        }
        // w * id is always null-homotopic, via (Ψ, Φ).
        let c = m.to_coherent();
        let (a, b) = c.scalar_matrices(p.w());
        let h = MFMorphism::new(&c, &c, 0, a, b).unwrap().null_homotopy().unwrap().unwrap();
        assert_eq!(h.degree, 1);
    }

    #[test]
    fn cones() {
        let (p, m) = node();
        let c = m.to_coherent();
        let cone_id = MFMorphism::identity(&c).cone(true).unwrap();
        assert_eq!(cone_id.validate().unwrap(), None);
        assert!(is_contractible(&cone_id).unwrap());
        let (a, b) = c.scalar_matrices(&p.ring().parse("x").unwrap());
        let cx = MFMorphism::new(&c, &c, 0, a, b).unwrap().cone(true).unwrap();
        assert_eq!(cx.validate().unwrap(), None);
        let bad = MFMorphism::new(&c, &c, 0, Matrix::identity(p.ring(), 1), Matrix::zeros(p.ring(), 1, 1)).unwrap();
        assert_eq!(bad.cone(true).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn homotopy_over_presented_modules() {
        // Υ-style object: M⁰ = S/(x), M¹ = 0 over R = k[x,y], w = xy is not
        // contractible; M⁰ = M¹ = R/(xy) with identity and zero is.
        let (p, _) = node();
        let r = p.ring();
        let s_x = PresentedModule::cyclic(r, &[r.parse("x").unwrap(), r.parse("x*y").unwrap()]);
        let zero = PresentedModule::zero(r);
        let f = CoherentFactorization::new(&p, ModuleMap::zero(&s_x, &zero), ModuleMap::zero(&zero, &s_x)).unwrap();
        assert!(!is_contractible(&f).unwrap());
        let q = PresentedModule::cyclic(r, &[r.parse("x*y").unwrap()]);
        let g = CoherentFactorization::new(&p, ModuleMap::identity(&q), ModuleMap::zero(&q, &q)).unwrap();
        let h = contracting_homotopy(&g).unwrap().unwrap();
        assert!(h.differential().sub(&MFMorphism::identity(&g)).unwrap().is_zero().unwrap());
    }
}
