use super::ideal::Ideal;
use super::linalg::{self, column_degree, minimal_generators};
use super::module::{subquotient, ModuleMap, PresentedModule};
use crate::error::Result;
use crate::groebner::Vector;
use crate::matrix::Matrix;
use crate::ring::Polynomial;

/// A re-presentation of a module together with mutually inverse maps.
#[derive(Clone, Debug)]
pub struct Pruned {
    pub module: PresentedModule,
    /// old -> new
    pub to_new: ModuleMap,
    /// new -> old
    pub to_old: ModuleMap,
}

/// Removes generators that a relation with a constant coefficient expresses
/// through the others, then drops redundant relations. For graded modules
/// the result is a minimal presentation.
pub fn prune(m: &PresentedModule) -> Result<Pruned> {
    let ring = m.ring().clone();
    let f = &ring.cover().field;
    let mut rel = m.relations().clone();
    let mut degrees = m.grading();
    let g0 = m.gens();
    // to_new: (current gens) x g0, to_old: g0 x (current gens)
    let mut to_new = Matrix::identity(&ring, g0);
    let mut to_old = Matrix::identity(&ring, g0);
    while let Some((i, j)) = rel.find_unit() {
        let g = rel.rows();
        let c = rel.get(i, j).constant_coeff();
        let cinv = f.inv(&c);
        let keep: Vec<usize> = (0..g).filter(|&r| r != i).collect();
        let pivot = rel.column(j);
        let mut new_cols = Vec::new();
        for k in 0..rel.cols() {
            if k == j {
                continue;
            }
            let col = rel.column(k);
            let factor = col[i].scale(&cinv);
            let reduced: Vector = keep.iter().map(|&r| col[r].sub(&factor.mul(&pivot[r]))).collect();
            new_cols.push(reduced);
        }
        // Elimination map: e_l -> e_l, e_i -> -(1/c) sum_{l != i} pivot_l e_l.
        let mut elim = Matrix::zeros(&ring, g - 1, g);
        for (a, &r) in keep.iter().enumerate() {
            elim.set(a, r, ring.one());
            elim.set(a, i, pivot[r].scale(&f.neg(&cinv)));
        }
        let incl = Matrix::identity(&ring, g).submatrix(&(0..g).collect::<Vec<_>>(), &keep);
        to_new = elim.mul(&to_new);
        to_old = to_old.mul(&incl);
        rel = Matrix::from_columns(&ring, g - 1, &new_cols);
        degrees = degrees.map(|d| keep.iter().map(|&r| d[r]).collect());
    }
    let g = rel.rows();
    let cols: Vec<Vector> = rel.columns();
    let kept = minimal_generators(&ring, g, &cols, &[], degrees.as_deref())?;
    let module = PresentedModule::new(Matrix::from_columns(&ring, g, &kept), degrees)?;
    Ok(Pruned {
        to_new: ModuleMap::unchecked(m.clone(), module.clone(), to_new)?,
        to_old: ModuleMap::unchecked(module.clone(), m.clone(), to_old)?,
        module,
    })
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel(f: &ModuleMap) -> Result<(PresentedModule, ModuleMap)> {
    f.check_well_defined()?;
    let ring = f.ring().clone();
    let src = &f.source;
    let gm = src.gens();
    let gn = f.target.gens();
    let mut cols = f.matrix.columns();
    let nf = cols.len();
    cols.extend(f.target.relations().columns());
    let k0: Vec<Vector> = linalg::syzygies(&ring, gn, &cols)?
        .into_iter()
        .map(|s| s[..nf].to_vec())
        .filter(|v: &Vector| v.iter().any(|p| !p.is_zero()))
        .collect();
    let src_rel = src.relations().columns();
    let kept = minimal_generators(&ring, gm, &k0, &src_rel, src.grading().as_deref())?;
    let sub = subquotient(&ring, gm, &kept, &src_rel)?;
    let sub = match src.grading() {
        Some(d) => {
            let degs: Vec<i64> = kept.iter().map(|c| column_degree(&ring, c, &d).unwrap_or(0)).collect();
            sub.with_degrees(Some(degs))?
        }
        None => sub,
    };
    let incl = ModuleMap::unchecked(sub.clone(), src.clone(), Matrix::from_columns(&ring, gm, &kept))?;
    let p = prune(&sub)?;
    let incl = p.to_old.compose(&incl)?;
    Ok((p.module, incl))
}

/// Cokernel of `f` with the projection from the target.
pub fn cokernel(f: &ModuleMap) -> Result<(PresentedModule, ModuleMap)> {
    f.check_well_defined()?;
    let rel = f.target.relations().hstack(&f.matrix)?;
    let m = PresentedModule::new(rel, f.target.declared_degrees().map(|d| d.to_vec()))?;
    let proj = ModuleMap::unchecked(f.target.clone(), m.clone(), Matrix::identity(f.ring(), f.target.gens()))?;
    Ok((m, proj))
}

/// Image of `f` with its inclusion into the target.
pub fn image(f: &ModuleMap) -> Result<(PresentedModule, ModuleMap)> {
    let ring = f.ring();
    let tgt_rel = f.target.relations().columns();
    let sub = subquotient(ring, f.target.gens(), &f.matrix.columns(), &tgt_rel)?;
    let incl = ModuleMap::unchecked(sub.clone(), f.target.clone(), f.matrix.clone())?;
    Ok((sub, incl))
}

/// True iff `f` is bijective (kernel and cokernel vanish).
pub fn is_isomorphism(f: &ModuleMap) -> Result<bool> {
    f.check_well_defined()?;
    let (c, _) = cokernel(f)?;
    if !c.is_zero()? {
        return Ok(false);
    }
    let (k, _) = kernel(f)?;
    k.is_zero()
}

/// `ann(M) = {r : r M = 0}`.
pub fn annihilator(m: &PresentedModule) -> Result<Ideal> {
    let ring = m.ring();
    let g = m.gens();
    if g == 0 {
        return Ok(Ideal::unit(ring));
    }
    // r -> (r e_1, ..., r e_g) must land in the g-fold sum of the relation
    // module inside R^(g*g).
    let n = g * g;
    let zero = || -> Vector { (0..n).map(|_| ring.zero()).collect() };
    let mut diag = zero();
    for i in 0..g {
        diag[i * g + i] = ring.one();
    }
    let mut cols = vec![diag];
    for i in 0..g {
        for c in m.relations().columns() {
            let mut v = zero();
            for (k, p) in c.into_iter().enumerate() {
                v[i * g + k] = p;
            }
            cols.push(v);
        }
    }
    let gens: Vec<Polynomial> = linalg::syzygies(ring, n, &cols)?
        .into_iter()
        .map(|s| s[0].clone())
        .filter(|p| !p.is_zero())
        .collect();
    Ideal::new(ring, gens)
}

/// Exactness of `C -g-> A -f-> B` at `A`: `f g = 0` and every kernel
/// element of `f` lies in the image of `g`.
pub fn is_exact_at(g: &ModuleMap, f: &ModuleMap) -> Result<bool> {
    if !g.compose(f)?.is_zero()? {
        return Ok(false);
    }
    let (_, incl) = kernel(f)?;
    let a = &f.source;
    let mut span = g.matrix.columns();
    span.extend(a.relations().columns());
    let gb = a.ring().submodule_gb(a.gens(), &span)?;
    Ok(incl.matrix.columns().iter().all(|c| gb.contains(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, PolyRing, Ring, RingPresentation};
    use std::sync::Arc;

    fn graded_ring(vars: &[&str]) -> Ring {
        let mut cover = (*PolyRing::new(Field::Rational, vars)).clone();
        cover.weights = Some(vec![1; vars.len()]);
        RingPresentation::polynomial(&Arc::new(cover))
    }

    fn mult_map(ring: &Ring, p: &str) -> ModuleMap {
        let f = PresentedModule::free(ring, 1);
        ModuleMap::new(f.clone(), f, Matrix::parse_rows(ring, &[vec![p]]).unwrap()).unwrap()
    }

    #[test]
    fn kernel_over_domain_is_zero() {
        let r = graded_ring(&["x", "y"]);
        let (k, _) = kernel(&mult_map(&r, "x")).unwrap();
        assert!(k.is_zero().unwrap());
    }

    #[test]
    fn kernel_of_x_on_node() {
        let r = graded_ring(&["x", "y"]);
        let s = r.quotient(&[r.parse("x*y").unwrap()]).unwrap();
        let (k, incl) = kernel(&mult_map(&s, "x")).unwrap();
        // (0 : x) = (y), presented as S/(x)
        assert_eq!(k.gens(), 1);
        assert_eq!(incl.matrix.to_string(), "1x1 [y]");
        assert_eq!(k.relations().to_string(), "1x1 [x]");
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let r = graded_ring(&["x", "y"]);
        let m = PresentedModule::cyclic(&r, &[r.parse("x").unwrap()]);
        let (k, _) = kernel(&ModuleMap::identity(&m)).unwrap();
        assert!(k.is_zero().unwrap());
    }

    #[test]
    fn cokernels() {
        let r = graded_ring(&["x", "y"]);
        let (c, _) = cokernel(&mult_map(&r, "x")).unwrap();
        assert_eq!(c.relations().to_string(), "1x1 [x]");
        let m = PresentedModule::cyclic(&r, &[r.parse("y").unwrap()]);
        let (c, proj) = cokernel(&ModuleMap::zero(&PresentedModule::zero(&r), &m)).unwrap();
        assert!(is_isomorphism(&proj).unwrap());
        assert_eq!(c.gens(), 1);
        let f2 = PresentedModule::free(&r, 2);
        let phi = Matrix::parse_rows(&r, &[vec!["x", "0"], vec!["0", "y"]]).unwrap();
        let (c, _) = cokernel(&ModuleMap::new(f2.clone(), f2, phi).unwrap()).unwrap();
        let ann = annihilator(&c).unwrap();
        assert!(ann.equals(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
    }

    #[test]
    fn isomorphism_checks() {
        let r = graded_ring(&["x", "y"]);
        let m = PresentedModule::cyclic(&r, &[r.parse("x").unwrap()]);
        assert!(is_isomorphism(&ModuleMap::identity(&m)).unwrap());
        assert!(!is_isomorphism(&mult_map(&r, "x")).unwrap());
        // Re-presentation with a redundant relation.
        let m2 = PresentedModule::new(Matrix::parse_rows(&r, &[vec!["x", "x*y", "x^2"]]).unwrap(), None).unwrap();
        let id = ModuleMap::new(m.clone(), m2, Matrix::identity(&r, 1)).unwrap();
        assert!(is_isomorphism(&id).unwrap());
    }

    #[test]
    fn annihilators() {
        let r = graded_ring(&["x", "y"]);
        let m = PresentedModule::cyclic(&r, &[r.parse("x").unwrap()]);
        assert!(annihilator(&m).unwrap().equals(&Ideal::parse(&r, &["x"]).unwrap()).unwrap());
        assert!(annihilator(&PresentedModule::free(&r, 2)).unwrap().is_zero());
        assert!(annihilator(&PresentedModule::zero(&r)).unwrap().is_unit().unwrap());
    }

    #[test]
    fn exactness_on_the_node() {
        let r = graded_ring(&["x", "y"]);
        let s = r.quotient(&[r.parse("x*y").unwrap()]).unwrap();
        let f = PresentedModule::free(&s, 1);
        let by = |p: &str| ModuleMap::new(f.clone(), f.clone(), Matrix::parse_rows(&s, &[vec![p]]).unwrap()).unwrap();
        assert!(is_exact_at(&by("y"), &by("x")).unwrap());
        assert!(!is_exact_at(&by("x*y"), &by("x")).unwrap());
        assert!(!is_exact_at(&by("x"), &by("x")).unwrap());
    }

    #[test]
    fn prune_removes_unit_relations() {
        let r = graded_ring(&["x", "y"]);
        // <e1, e2 | e1 - x e2, y e2>  ~  R/(y) on e2
        let m = PresentedModule::new(Matrix::parse_rows(&r, &[vec!["1", "0"], vec!["-x", "y"]]).unwrap(), None).unwrap();
        let p = prune(&m).unwrap();
        assert_eq!(p.module.gens(), 1);
        assert_eq!(p.module.relations().to_string(), "1x1 [y]");
        assert!(is_isomorphism(&p.to_new).unwrap());
        assert!(is_isomorphism(&p.to_old).unwrap());
    }
}
