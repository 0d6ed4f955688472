use super::complex::ModuleComplex;
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::homalg::linalg::Solver;
use crate::homalg::{cokernel, kernel, ModuleMap, PresentedModule};
use crate::matrix::Matrix;
use crate::mf::{contracting_homotopy, CoherentFactorization, MFMorphism, Potential};
use crate::ring::Ring;

/// `coker(δ₁: M¹ -> M⁰) ⊗ S` without any flatness check.
fn naive_xi(m: &CoherentFactorization) -> Result<PresentedModule> {
    let (c, _) = cokernel(&m.delta1)?;
    c.tensor_to(m.potential.zero_locus())
}

/// `Ξ(M) = coker(δ₁)`, an `S`-module. With `require_flat` the input must be
/// w-flat; otherwise the derived version [`l_xi`] is the right tool.
pub fn xi(m: &CoherentFactorization, require_flat: bool) -> Result<PresentedModule> {
    if require_flat && !is_flat(m)? {
        return Err(Error::NotWFlat);
    }
    naive_xi(m)
}

fn is_flat(m: &CoherentFactorization) -> Result<bool> {
    let free = m.m0.is_free_presentation() && m.m1.is_free_presentation();
    Ok(free && m.potential.is_nonzero_divisor() || m.is_w_flat()?)
}

/// `Ξ(f): Ξ(M) -> Ξ(N)` for a closed degree-0 morphism.
pub fn xi_morphism(f: &MFMorphism) -> Result<ModuleMap> {
    let s = f.source.potential.zero_locus();
    ModuleMap::unchecked(naive_xi(&f.source)?, naive_xi(&f.target)?, f.f0.over(s)?)
}

/// Folds a complex of `S`-modules: `M⁰ = ⊕ F^even`, `M¹ = ⊕ F^odd`, each
/// viewed over `R`, with `δ` assembled from the differential.
pub fn upsilon(potential: &Potential, f: &ModuleComplex) -> Result<CoherentFactorization> {
    let r = potential.ring();
    let s = potential.zero_locus();
    f.ring.check_same(s)?;
    if !f.squares_to_zero()? {
        return Err(Error::InvalidInput("d^2 != 0".into()));
    }
    let parity = |i: usize| f.degree_of(i).rem_euclid(2) as usize;
    let mut comps: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for i in 0..f.terms.len() {
        comps[parity(i)].push(i);
    }
    let lifted: Vec<PresentedModule> = f.terms.iter().map(|t| t.restrict_to(r)).collect::<Result<_>>()?;
    let sum = |idx: &[usize]| -> Result<(PresentedModule, Vec<usize>)> {
        let mut m = PresentedModule::zero(r);
        let mut offsets = vec![0; f.terms.len()];
        for &i in idx {
            offsets[i] = m.gens();
            m = m.direct_sum(&lifted[i])?;
        }
        Ok((m, offsets))
    };
    let (m0, off0) = sum(&comps[0])?;
    let (m1, off1) = sum(&comps[1])?;
    let offs = [off0, off1];
    let mut d0 = Matrix::zeros(r, m1.gens(), m0.gens());
    let mut d1 = Matrix::zeros(r, m0.gens(), m1.gens());
    for (i, g) in f.maps.iter().enumerate() {
        let (p, q) = (parity(i), parity(i + 1));
        let d = if p == 0 { &mut d0 } else { &mut d1 };
        let gm = g.matrix.over(r)?;
        for a in 0..gm.rows() {
            for b in 0..gm.cols() {
                d.set(offs[q][i + 1] + a, offs[p][i] + b, gm.get(a, b).clone());
            }
        }
    }
    CoherentFactorization::new(potential, ModuleMap::unchecked(m0.clone(), m1.clone(), d0)?, ModuleMap::unchecked(m1, m0, d1)?)
}

/// A w-flat replacement `cover -> M`, surjective with w-flat kernel.
#[derive(Clone, Debug)]
pub struct FlatCover {
    pub cover: CoherentFactorization,
    pub map: MFMorphism,
    pub kernel: CoherentFactorization,
    pub inclusion: MFMorphism,
    /// Present when the kernel was certified contractible.
    pub kernel_contraction: Option<MFMorphism>,
    pub strategy: CoverStrategy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverStrategy {
    /// Input already w-flat; the map is the identity.
    Identity,
    /// `M̃⁰` free and `M̃¹ = M̃⁰ ×_{M⁰} M¹` (needs `δ₁` injective).
    FiberProduct,
    /// The same with the roles of the components exchanged.
    ShiftedFiberProduct,
    /// `G(P⁰) ⊕ G'(P¹)` built from free covers of both components.
    Free,
}

/// Is `f` injective?
fn is_injective(f: &ModuleMap) -> Result<bool> {
    kernel(f)?.0.is_zero()
}

/// `M̃⁰ = R^{g0}`, `M̃¹ = {(p, m) : p = δ₁ m in M⁰}`, `δ̃₁(p, m) = p`,
/// `δ̃₀(p) = (w p, δ₀ p)`.
fn fiber_product_cover(m: &CoherentFactorization) -> Result<(CoherentFactorization, MFMorphism)> {
    let r = m.ring();
    let w = m.potential.w();
    let (g0, g1) = (m.m0.gens(), m.m1.gens());
    let p0 = PresentedModule::free(r, g0);
    let amb = p0.direct_sum(&m.m1)?;
    let diff = Matrix::identity(r, g0).hstack(&m.delta1.matrix.neg())?;
    let (fib, incl) = kernel(&ModuleMap::unchecked(amb.clone(), m.m0.clone(), diff)?)?;
    let nk = fib.gens();
    let top: Vec<usize> = (0..g0).collect();
    let bottom: Vec<usize> = (g0..g0 + g1).collect();
    let all: Vec<usize> = (0..nk).collect();
    let d1 = incl.matrix.submatrix(&top, &all);
    let pi1 = incl.matrix.submatrix(&bottom, &all);
    let mut cols = incl.matrix.columns();
    cols.extend(amb.relations().columns());
    let solver = Solver::new(r, g0 + g1, &cols)?;
    let mut d0_cols: Vec<Vector> = Vec::new();
    for j in 0..g0 {
        let mut v: Vector = (0..g0).map(|i| if i == j { w.clone() } else { r.zero() }).collect();
        v.extend(m.delta0.matrix.column(j));
        let x = solver.solve(&v).ok_or_else(|| Error::Internal("(w p, δ₀ p) is not in the fiber product".into()))?;
        d0_cols.push(x[..nk].to_vec());
    }
    let d0 = Matrix::from_columns(r, nk, &d0_cols);
    let cover = CoherentFactorization::unchecked(
        &m.potential,
        ModuleMap::unchecked(p0.clone(), fib.clone(), d0)?,
        ModuleMap::unchecked(fib, p0, d1)?,
    )?;
    let map = MFMorphism::unchecked(&cover, m, 0, Matrix::identity(r, g0), pi1)?;
    Ok((cover, map))
}

/// Shifts a degree-0 morphism along with both ends.
fn shift_morphism(f: &MFMorphism) -> Result<MFMorphism> {
    MFMorphism::unchecked(&f.source.shift(), &f.target.shift(), 0, f.f1.clone(), f.f0.clone())
}

/// `G(R^{g0}) ⊕ G'(R^{g1})` with `G(P) = (Φ = w, Ψ = Id)` over `P` mapping
/// by `(Id, δ₀)` and `G'(P) = (Φ = Id, Ψ = w)` mapping by `(δ₁, Id)`.
fn free_cover(m: &CoherentFactorization) -> Result<(CoherentFactorization, MFMorphism)> {
    let r = m.ring();
    let (g0, g1) = (m.m0.gens(), m.m1.gens());
    let g = g0 + g1;
    let f = PresentedModule::free(r, g);
    let w = m.potential.w();
    let phi = Matrix::scalar(r, g0, w).block_diag(&Matrix::identity(r, g1));
    let psi = Matrix::identity(r, g0).block_diag(&Matrix::scalar(r, g1, w));
    let cover = CoherentFactorization::unchecked(
        &m.potential,
        ModuleMap::unchecked(f.clone(), f.clone(), psi)?,
        ModuleMap::unchecked(f.clone(), f, phi)?,
    )?;
    let f0 = Matrix::identity(r, g0).hstack(&m.delta1.matrix)?;
    let f1 = m.delta0.matrix.hstack(&Matrix::identity(r, g1))?;
    let map = MFMorphism::unchecked(&cover, m, 0, f0, f1)?;
    Ok((cover, map))
}

/// Chooses the first applicable construction in the order of
/// [`CoverStrategy`] and certifies what it can about the kernel.
pub fn flat_cover(m: &CoherentFactorization) -> Result<FlatCover> {
    m.potential.require_nonzero_divisor()?;
    let (strategy, cover, map) = if is_flat(m)? {
        let id = MFMorphism::identity(m);
        (CoverStrategy::Identity, m.clone(), id)
    } else if is_injective(&m.delta1)? {
        let (c, f) = fiber_product_cover(m)?;
        (CoverStrategy::FiberProduct, c, f)
    } else if is_injective(&m.delta0)? {
        let (_, f) = fiber_product_cover(&m.shift())?;
        let f = shift_morphism(&f)?;
        (CoverStrategy::ShiftedFiberProduct, f.source.clone(), MFMorphism { target: m.clone(), ..f })
    } else {
        let (c, f) = free_cover(m)?;
        (CoverStrategy::Free, c, f)
    };
    let (kernel, inclusion) = map.kernel()?;
    let kernel_contraction = match strategy {
        CoverStrategy::Free => None,
        _ => contracting_homotopy(&kernel)?,
    };
    Ok(FlatCover { cover, map, kernel, inclusion, kernel_contraction, strategy })
}

/// `LΞ(M)` as the two-term complex `Ξ(K) -> Ξ(M̃)` in degrees -1, 0, with
/// the comparison `H⁰ -> coker(δ₁) ⊗ S` induced by the cover.
#[derive(Clone, Debug)]
pub struct LXi {
    pub complex: ModuleComplex,
    pub comparison: ModuleMap,
    pub cover: FlatCover,
}

impl LXi {
    /// The comparison is an isomorphism and `H^{-1}` vanishes, i.e. the
    /// complex is quasi-isomorphic to the naive cokernel.
    pub fn comparison_is_quasi_isomorphism(&self) -> Result<bool> {
        Ok(crate::homalg::is_isomorphism(&self.comparison)? && self.complex.cohomology(-1)?.is_zero()?)
    }
}

pub fn l_xi(m: &CoherentFactorization) -> Result<LXi> {
    let cover = flat_cover(m)?;
    let s = m.potential.zero_locus();
    let top = naive_xi(&cover.cover)?;
    let complex = if cover.strategy == CoverStrategy::Identity {
        let zero = PresentedModule::zero(s);
        ModuleComplex::new(s, -1, vec![zero.clone(), top.clone()], vec![ModuleMap::zero(&zero, &top)])?
    } else {
        ModuleComplex::two_term(&xi_morphism(&cover.inclusion)?)?
    };
    let (h0, _) = cokernel(&complex.maps[0])?;
    let comparison = ModuleMap::new(h0, naive_xi(m)?, cover.map.f0.over(s)?)?;
    Ok(LXi { complex, comparison, cover })
}

/// `φ: M -> ΥΞ(M)` with its kernel and a contracting homotopy of it.
#[derive(Clone, Debug)]
pub struct XiUnit {
    pub phi: MFMorphism,
    pub kernel: CoherentFactorization,
    pub inclusion: MFMorphism,
    pub contraction: MFMorphism,
}

pub fn upsilon_xi_unit(m: &CoherentFactorization) -> Result<XiUnit> {
    if !is_flat(m)? {
        return Err(Error::NotWFlat);
    }
    let r: &Ring = m.ring();
    let xm = naive_xi(m)?;
    let target = upsilon(&m.potential, &ModuleComplex::single(&xm))?;
    let phi = MFMorphism::new(
        m,
        &target,
        0,
        Matrix::identity(r, m.m0.gens()),
        Matrix::zeros(r, 0, m.m1.gens()),
    )?;
    let (kernel, inclusion) = phi.kernel()?;
    let contraction = contracting_homotopy(&kernel)?.ok_or_else(|| {
        Error::Internal(format!(
            "no contracting homotopy for the kernel of M -> ΥΞ(M): K⁰ = {:?}, K¹ = {:?}, δ₀ = {}, δ₁ = {}",
            kernel.m0, kernel.m1, kernel.delta0.matrix, kernel.delta1.matrix
        ))
    })?;
    Ok(XiUnit { phi, kernel, inclusion, contraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::is_isomorphism;
    use crate::mf::MatrixFactorization;
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
    fn xi_of_basic_objects() {
        let (p, m) = node();
        let x = xi(&m.to_coherent(), true).unwrap();
        let s = p.zero_locus();
        let expect = PresentedModule::cyclic(s, &[s.parse("x").unwrap()]);
        assert!(is_isomorphism(&ModuleMap::new(x, expect, Matrix::identity(s, 1)).unwrap()).unwrap());
        let t = MatrixFactorization::trivial(&p, 2, false);
        assert!(xi(&t.to_coherent(), true).unwrap().is_zero().unwrap());
    }

    #[test]
    fn round_trip_on_modules() {
        let (p, _) = node();
        let s = p.zero_locus();
        for gens in [vec!["x"], vec!["y"], vec!["x", "y"], vec![]] {
            let g: Vec<_> = gens.iter().map(|v| s.parse(v).unwrap()).collect();
            let n = PresentedModule::cyclic(s, &g);
            let u = upsilon(&p, &ModuleComplex::single(&n)).unwrap();
            let l = l_xi(&u).unwrap();
            assert_eq!(l.cover.strategy, CoverStrategy::FiberProduct);
            assert!(l.cover.kernel_contraction.is_some());
            assert!(l.comparison_is_quasi_isomorphism().unwrap(), "{gens:?}");
        }
    }

    #[test]
    fn unit_has_contractible_kernel() {
        let (p, m) = node();
        for f in [m.clone(), MatrixFactorization::trivial(&p, 1, false), m.direct_sum(&m.shift()).unwrap()] {
            let u = upsilon_xi_unit(&f.to_coherent()).unwrap();
            assert!(u.phi.is_closed().unwrap());
            let id = MFMorphism::identity(&u.kernel);
            assert!(u.contraction.differential().sub(&id).unwrap().is_zero().unwrap());
        }
    }

    #[test]
    fn flat_input_uses_identity_cover() {
        let (_, m) = node();
        let l = l_xi(&m.to_coherent()).unwrap();
        assert_eq!(l.cover.strategy, CoverStrategy::Identity);
        assert!(l.comparison_is_quasi_isomorphism().unwrap());
    }

    #[test]
    fn two_term_complexes() {
        let (p, _) = node();
        let s = p.zero_locus();
        let n = PresentedModule::cyclic(s, &[s.parse("x").unwrap()]);
        let id = ModuleMap::identity(&n);
        let u = upsilon(&p, &ModuleComplex::two_term(&id).unwrap()).unwrap();
        assert_eq!(u.validate().unwrap(), None);
        let l = l_xi(&u).unwrap();
        assert!(l.complex.cohomology(0).unwrap().is_zero().unwrap());
        assert!(l.complex.cohomology(-1).unwrap().is_zero().unwrap());
    }
}
