use std::fmt;
use std::sync::OnceLock;

use super::linalg::{self, is_homogeneous_column};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Vector};
use crate::matrix::Matrix;
use crate::ring::{Polynomial, Ring};

/// `coker(relations: R^k -> R^g)` over a ring presentation. Over `S = R/(w)`
/// the base ring is simply the presentation with `w` adjoined to the ideal.
#[derive(Clone)]
pub struct PresentedModule {
    ring: Ring,
    relations: Matrix,
    degrees: Option<Vec<i64>>,
    gb: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {} over {}", self.relations, self.ring)
    }
}

impl PresentedModule {
    pub fn new(relations: Matrix, degrees: Option<Vec<i64>>) -> Result<Self> {
        if let Some(d) = &degrees {
            if d.len() != relations.rows() {
                return Err(Error::InvalidInput("one degree per generator required".into()));
            }
        }
        Ok(PresentedModule { ring: relations.ring().clone(), relations, degrees, gb: OnceLock::new() })
    }

    pub fn free(ring: &Ring, rank: usize) -> Self {
        Self::new(Matrix::zeros(ring, rank, 0), None).unwrap()
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, 0)
    }

    /// `R / (gens)`.
    pub fn cyclic(ring: &Ring, gens: &[Polynomial]) -> Self {
        let m = Matrix::from_rows(ring, vec![gens.to_vec()]).unwrap_or_else(|_| Matrix::zeros(ring, 1, 0));
        let m = if gens.is_empty() { Matrix::zeros(ring, 1, 0) } else { m };
        Self::new(m, None).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn declared_degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    pub fn with_degrees(mut self, degrees: Option<Vec<i64>>) -> Result<Self> {
        if let Some(d) = &degrees {
            if d.len() != self.gens() {
                return Err(Error::InvalidInput("one degree per generator required".into()));
            }
        }
        self.degrees = degrees;
        Ok(self)
    }

    /// Generator degrees making every relation homogeneous: the declared
    /// ones if they work, otherwise inferred from the relations (each
    /// connected block normalized to start at degree 0).
    pub fn grading(&self) -> Option<Vec<i64>> {
        let w = self.ring.weights()?;
        if let Some(d) = &self.degrees {
            return self.relations.columns().iter().all(|c| is_homogeneous_column(&self.ring, c, d)).then(|| d.clone());
        }
        let g = self.gens();
        let mut deg: Vec<Option<i64>> = vec![None; g];
        let cols = self.relations.columns();
        let mut entry_deg = Vec::new();
        for c in &cols {
            let mut row = Vec::new();
            for p in c {
                {
                    let d = p.homogeneous_degree(w)?;
                    row.push(d.map(|x| x as i64))
                }
            }
            entry_deg.push(row);
        }
        // Propagate offsets: in each column a_i + d_ij is constant.
        for start in 0..g {
            if deg[start].is_some() {
                continue;
            }
            deg[start] = Some(0);
            let mut changed = true;
            while changed {
                changed = false;
                for row in &entry_deg {
                    let anchor = row.iter().enumerate().find_map(|(i, d)| match (d, deg[i]) {
                        (Some(d), Some(a)) => Some(a + d),
                        _ => None,
                    });
                    let Some(total) = anchor else { continue };
                    for (i, d) in row.iter().enumerate() {
                        if let Some(d) = d {
                            match deg[i] {
                                None => {
                                    deg[i] = Some(total - d);
                                    changed = true;
                                }
                                Some(a) if a + d != total => return None,
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        let mut out: Vec<i64> = deg.into_iter().map(|d| d.unwrap_or(0)).collect();
        if let Some(&mn) = out.iter().min() {
            out.iter_mut().for_each(|d| *d -= mn);
        }
        Some(out)
    }

    pub fn is_graded(&self) -> bool {
        self.grading().is_some()
    }

    pub fn relation_gb(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = self.ring.submodule_gb(self.gens(), &self.relations.columns())?;
        Ok(self.gb.get_or_init(|| gb))
    }

    /// Canonical representative of an element given on generators.
    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vector> {
        Ok(self.relation_gb()?.normal_form(v))
    }

    pub fn is_zero_element(&self, v: &[Polynomial]) -> Result<bool> {
        Ok(self.relation_gb()?.contains(v))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.gens() == 0 || self.relation_gb()?.is_everything())
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn unit_vector(&self, i: usize) -> Vector {
        (0..self.gens()).map(|k| if k == i { self.ring.one() } else { self.ring.zero() }).collect()
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        self.ring.check_same(&other.ring)?;
        let degrees = match (&self.degrees, &other.degrees) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        PresentedModule::new(self.relations.block_diag(&other.relations), degrees)
    }

    /// Views the module over a presentation with the same cover whose ideal
    /// is contained in ours (e.g. an `S`-module as an `R`-module): the
    /// generators of our ideal become extra relations.
    pub fn restrict_to(&self, ring: &Ring) -> Result<PresentedModule> {
        if ring.cover() != self.ring.cover() {
            return Err(Error::RingMismatch);
        }
        let g = self.gens();
        let mut cols = self.relations.columns();
        for p in self.ring.ideal_gb().polys() {
            if ring.is_zero(&p) {
                continue;
            }
            for i in 0..g {
                let mut v: Vector = (0..g).map(|_| ring.zero()).collect();
                v[i] = p.clone();
                cols.push(v);
            }
        }
        PresentedModule::new(Matrix::from_columns(ring, g, &cols), self.degrees.clone())
    }

    /// Base change to a quotient presentation `M ⊗ ring`.
    pub fn tensor_to(&self, ring: &Ring) -> Result<PresentedModule> {
        PresentedModule::new(self.relations.over(ring)?, self.degrees.clone())
    }
}

/// A homomorphism given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    /// Checks well-definedness: source relations land in the target's
    /// relation submodule.
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<Self> {
        let f = Self::unchecked(source, target, matrix)?;
        f.check_well_defined()?;
        Ok(f)
    }

    pub fn unchecked(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<Self> {
        source.ring().check_same(target.ring())?;
        source.ring().check_same(matrix.ring())?;
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(Error::InvalidInput(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn check_well_defined(&self) -> Result<()> {
        let gb = self.target.relation_gb()?;
        for (j, c) in self.source.relations().columns().iter().enumerate() {
            if !gb.contains(&self.matrix.apply(c)) {
                return Err(Error::IllDefinedMap(format!("source relation {j} is not sent into the target relations")));
            }
        }
        Ok(())
    }

    pub fn identity(m: &PresentedModule) -> Self {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.ring(), m.gens()) }
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.ring(), target.gens(), source.gens()),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    pub fn compose(&self, after: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::unchecked(self.source.clone(), after.target.clone(), after.matrix.try_mul(&self.matrix)?)
    }

    /// Every generator is sent to zero.
    pub fn is_zero(&self) -> Result<bool> {
        let gb = self.target.relation_gb()?;
        Ok(self.matrix.columns().iter().all(|c| gb.contains(c)))
    }

    /// Equality as homomorphisms (difference vanishes modulo the target
    /// relations).
    pub fn equals(&self, other: &ModuleMap) -> Result<bool> {
        let d = ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.try_sub(&other.matrix)?)?;
        d.is_zero()
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vector {
        self.matrix.apply(v)
    }

    pub fn direct_sum(&self, other: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::unchecked(
            self.source.direct_sum(&other.source)?,
            self.target.direct_sum(&other.target)?,
            self.matrix.block_diag(&other.matrix),
        )
    }
}

/// `span(cols) / (span(cols) ∩ span(base))` inside `R^rank`, presented on
/// the given columns as generators.
pub fn subquotient(ring: &Ring, rank: usize, cols: &[Vector], base: &[Vector]) -> Result<PresentedModule> {
    let mut all = cols.to_vec();
    all.extend(base.iter().cloned());
    let m = cols.len();
    let rel: Vec<Vector> = linalg::syzygies(ring, rank, &all)?
        .into_iter()
        .map(|s| s[..m].to_vec())
        .filter(|v: &Vector| v.iter().any(|p| !p.is_zero()))
        .collect();
    PresentedModule::new(Matrix::from_columns(ring, m, &rel), None)
}
