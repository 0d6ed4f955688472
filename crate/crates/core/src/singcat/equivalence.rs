use std::fmt;

use crate::error::{Error, Result};
use crate::functors::{l_xi, stabilize, upsilon, upsilon_xi_unit, xi, LXi, ModuleComplex, Stabilization, XiUnit};
use crate::homalg::{free_resolution, is_perfect, kernel, FreeResolution, ModuleMap, Perfectness, PresentedModule};
use crate::matrix::Matrix;
use crate::mf::{MFMorphism, MatrixFactorization, Potential};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// `LΞ(Υ(N)) -> N` is a quasi-isomorphism.
    RoundTripModule,
    /// The kernel of `M -> ΥΞ(M)` is contractible.
    RoundTripFactorization,
    /// `Ξ(M)` has projective dimension at most 1 over `R`.
    Orthogonality,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::RoundTripModule => "round-trip-module",
            CheckKind::RoundTripFactorization => "round-trip-factorization",
            CheckKind::Orthogonality => "orthogonality",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Evidence {
    QuasiIsomorphism(Box<LXi>),
    Contraction(Box<XiUnit>),
    /// `Φ` is injective and presents `Ξ(M)` over `R`; `resolution` is the
    /// minimal `R`-resolution when the input is graded.
    Perfect { pd: usize, resolution: Option<FreeResolution> },
    Failure(String),
}

#[derive(Clone, Debug)]
pub struct Check {
    pub kind: CheckKind,
    /// Position of the object in its input list.
    pub object: usize,
    pub passed: bool,
    pub evidence: Evidence,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub checks: Vec<Check>,
}

impl EquivalenceReport {
    /// Vacuously true on empty input.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Round trip on modules, round trip on factorizations and orthogonality
/// to perfect complexes, each object checked independently. Exhausted
/// bounds propagate; other failures are recorded in the report.
pub fn verify_main_equivalence(potential: &Potential, modules: &[PresentedModule], factorizations: &[MatrixFactorization]) -> Result<EquivalenceReport> {
    potential.require_nonzero_divisor()?;
    let s = potential.zero_locus();
    let mut checks = Vec::new();
    for (i, n) in modules.iter().enumerate() {
        n.ring().check_same(s)?;
        let outcome = upsilon(potential, &ModuleComplex::single(n)).and_then(|u| l_xi(&u)).and_then(|l| {
            let ok = l.comparison_is_quasi_isomorphism()?;
            Ok((ok, l))
        });
        checks.push(record(CheckKind::RoundTripModule, i, outcome.map(|(ok, l)| (ok, Evidence::QuasiIsomorphism(Box::new(l)))))?);
    }
    for (i, m) in factorizations.iter().enumerate() {
        m.potential.check_same(potential)?;
        let outcome = upsilon_xi_unit(&m.to_coherent()).and_then(|u| {
            let ok = contraction_holds(&u)?;
            Ok((ok, Evidence::Contraction(Box::new(u))))
        });
        checks.push(record(CheckKind::RoundTripFactorization, i, outcome)?);
        checks.push(record(CheckKind::Orthogonality, i, orthogonality(m))?);
    }
    Ok(EquivalenceReport { checks })
}

fn record(kind: CheckKind, object: usize, outcome: Result<(bool, Evidence)>) -> Result<Check> {
    match outcome {
        Ok((passed, evidence)) => Ok(Check { kind, object, passed, evidence }),
        Err(e @ Error::Exhausted(_)) => Err(e),
        Err(e) => Ok(Check { kind, object, passed: false, evidence: Evidence::Failure(e.to_string()) }),
    }
}

/// Rechecks `dh = id` on the kernel independently of the search.
fn contraction_holds(u: &XiUnit) -> Result<bool> {
    let d = u.contraction.differential();
    d.sub(&MFMorphism::identity(&u.kernel))?.is_zero()
}

fn orthogonality(m: &MatrixFactorization) -> Result<(bool, Evidence)> {
    let r = m.ring();
    let n = m.rank();
    if n == 0 {
        return Ok((true, Evidence::Perfect { pd: 0, resolution: None }));
    }
    let x = xi(&m.to_coherent(), true)?.restrict_to(r)?;
    // Φ injective and w·Id = ΦΨ inside im Φ give 0 -> R^n -Φ-> R^n -> Ξ(M) -> 0.
    let free = PresentedModule::free(r, n);
    let (ker, _) = kernel(&ModuleMap::new(free.clone(), free, m.phi.clone())?)?;
    let injective = ker.is_zero()?;
    let absorbed = m.phi.mul(&m.psi).same(&Matrix::scalar(r, n, m.potential.w()));
    if !(injective && absorbed) {
        return Ok((false, Evidence::Failure("Φ does not give a length-one resolution of Ξ(M)".into())));
    }
    if !(r.is_graded() && x.is_graded()) {
        return Ok((true, Evidence::Perfect { pd: 1, resolution: None }));
    }
    match is_perfect(&x, 2)? {
        Perfectness::Yes(pd) if pd <= 1 => {
            let res = free_resolution(&x, 2, true)?;
            Ok((true, Evidence::Perfect { pd, resolution: Some(res) }))
        }
        other => Ok((false, Evidence::Failure(format!("graded perfectness test disagrees: {other:?}")))),
    }
}

/// `shift²` of the stabilization of `F` and the comparison of cokernels.
#[derive(Clone, Debug)]
pub struct ShiftSquareWitness {
    pub stabilization: Stabilization,
    pub shifted_twice: MatrixFactorization,
    /// `shift²` reproduces the factorization matrices exactly.
    pub matrices_fixed: bool,
    /// `Ξ(shift²(P))` and `Ξ(P)` have identical presentations, `P` the
    /// unreduced stabilization.
    pub xi_fixed: bool,
}

pub fn shift_square_witness(potential: &Potential, f: &PresentedModule, max_syzygy: usize) -> Result<ShiftSquareWitness> {
    let st = stabilize(potential, f, max_syzygy)?;
    let shifted_twice = st.factorization.shift().shift();
    let matrices_fixed = shifted_twice.same(&st.factorization);
    let p2 = st.presentation.shift().shift();
    let xi_fixed = xi(&p2.to_coherent(), true)?.relations().same(xi(&st.presentation.to_coherent(), true)?.relations());
    Ok(ShiftSquareWitness { stabilization: st, shifted_twice, matrices_fixed, xi_fixed })
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

    fn mf(p: &Potential, phi: &[Vec<&str>], psi: &[Vec<&str>]) -> MatrixFactorization {
        let r = p.ring();
        MatrixFactorization::new(p, Matrix::parse_rows(r, phi).unwrap(), Matrix::parse_rows(r, psi).unwrap()).unwrap()
    }

    #[test]
    fn node_instance_passes() {
        let p = graded(&["x", "y"], "x*y");
        let modules = vec![cyclic(&p, &["x"]), cyclic(&p, &["y"]), cyclic(&p, &["x", "y"]), PresentedModule::free(p.zero_locus(), 1)];
        let facs = vec![
            mf(&p, &[vec!["x"]], &[vec!["y"]]),
            mf(&p, &[vec!["x", "y"], vec!["0", "-y"]], &[vec!["y", "y"], vec!["0", "-x"]]),
        ];
        let report = verify_main_equivalence(&p, &modules, &facs).unwrap();
        assert_eq!(report.checks.len(), 8);
        for c in &report.checks {
            assert!(c.passed, "{} on object {} failed: {:?}", c.kind, c.object, c.evidence);
        }
        assert!(verify_main_equivalence(&p, &[], &[]).unwrap().passed());
    }

    #[test]
    fn regular_fiber_stabilizes_to_zero() {
        let p = graded(&["x"], "x");
        let k = cyclic(&p, &["x"]);
        assert_eq!(stabilize(&p, &k, 4).unwrap().factorization.rank(), 0);
        assert!(verify_main_equivalence(&p, &[k], &[mf(&p, &[vec!["x"]], &[vec!["1"]])]).unwrap().passed());
    }

    #[test]
    fn shift_square_fixes_stabilizations() {
        let p = graded(&["x", "y"], "x*y");
        for gens in [vec!["x"], vec!["x", "y"], vec!["1"]] {
            let w = shift_square_witness(&p, &cyclic(&p, &gens), 4).unwrap();
            assert!(w.matrices_fixed && w.xi_fixed);
        }
    }
}
