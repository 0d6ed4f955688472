use super::factorization::{CoherentFactorization, MatrixFactorization};
use super::morphism::MFMorphism;
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::homalg::{is_exact_at, linalg, prune, subquotient, ModuleMap, PresentedModule};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// Cohomology of the `Z/2`-graded Hom complex, as modules over `S`.
#[derive(Clone, Debug)]
pub struct HomCohomology {
    pub h0: PresentedModule,
    pub h1: PresentedModule,
}

/// The matrix of `d: Hom^k(M, N) -> Hom^{k+1}(M, N)` on the coordinates
/// `(f0, f1)` flattened column-major.
fn hom_differential(m: &CoherentFactorization, n: &CoherentFactorization, degree: u8, shape: (usize, usize)) -> Matrix {
    let ring = m.ring();
    let (r, c) = shape;
    let mut cols: Vec<Vector> = Vec::new();
    for which in 0..2 {
        for j in 0..c {
            for i in 0..r {
                let mut e = Matrix::zeros(ring, r, c);
                e.set(i, j, ring.one());
                let z = Matrix::zeros(ring, r, c);
                let (f0, f1) = if which == 0 { (e, z) } else { (z, e) };
                let d = MFMorphism { source: m.clone(), target: n.clone(), degree, f0, f1 }.differential();
                let mut v = d.f0.flatten();
                v.extend(d.f1.flatten());
                cols.push(v);
            }
        }
    }
    Matrix::from_columns(ring, 2 * r * c, &cols)
}

/// `H^k = ker d_k / im d_{k-1}` of `Hom(M, N)` for matrix factorizations.
pub fn hom_cohomology(m: &MatrixFactorization, n: &MatrixFactorization) -> Result<HomCohomology> {
    m.potential.check_same(&n.potential)?;
    let ring = m.ring().clone();
    let s = m.potential.zero_locus().clone();
    let shape = (n.rank(), m.rank());
    let dim = 2 * shape.0 * shape.1;
    let (mc, nc) = (m.to_coherent(), n.to_coherent());
    let d0 = hom_differential(&mc, &nc, 0, shape);
    let d1 = hom_differential(&mc, &nc, 1, shape);
    let h = |d_out: &Matrix, d_in: &Matrix| -> Result<PresentedModule> {
        if dim == 0 {
            return Ok(PresentedModule::zero(&s));
        }
        let z = linalg::syzygies(&ring, dim, &d_out.columns())?;
        let q = subquotient(&ring, dim, &z, &d_in.columns())?;
        Ok(prune(&q.tensor_to(&s)?)?.module)
    };
    Ok(HomCohomology { h0: h(&d0, &d1)?, h1: h(&d1, &d0)? })
}

/// The reduction `... -> M¹ -Φ-> M⁰ -Ψ-> M¹ -> ...` over `S`.
#[derive(Clone, Debug)]
pub struct PeriodicComplex {
    pub ring: Ring,
    /// `M¹ -> M⁰`.
    pub d1: ModuleMap,
    /// `M⁰ -> M¹`.
    pub d0: ModuleMap,
}

impl PeriodicComplex {
    pub fn is_complex(&self) -> Result<bool> {
        Ok(self.d1.compose(&self.d0)?.is_zero()? && self.d0.compose(&self.d1)?.is_zero()?)
    }

    /// Exactness at `spots` consecutive positions starting at `M⁰`.
    pub fn verify_exact(&self, spots: usize) -> Result<bool> {
        for k in 0..spots {
            let ok = if k % 2 == 0 { is_exact_at(&self.d1, &self.d0)? } else { is_exact_at(&self.d0, &self.d1)? };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Tensors a w-flat factorization with `S = R/(w)`.
pub fn restrict_to_zero_locus(m: &CoherentFactorization) -> Result<PeriodicComplex> {
    let free = m.m0.is_free_presentation() && m.m1.is_free_presentation();
    if !(free && m.potential.is_nonzero_divisor()) && !m.is_w_flat()? {
        return Err(Error::NotWFlat);
    }
    let s = m.potential.zero_locus().clone();
    let m0 = m.m0.tensor_to(&s)?;
    let m1 = m.m1.tensor_to(&s)?;
    Ok(PeriodicComplex {
        d1: ModuleMap::unchecked(m1.clone(), m0.clone(), m.delta1.matrix.over(&s)?)?,
        d0: ModuleMap::unchecked(m0, m1, m.delta0.matrix.over(&s)?)?,
        ring: s,
    })
}
