use crate::error::{Error, Result};
use crate::homalg::{cokernel, is_exact_at, kernel, ModuleMap, PresentedModule};
use crate::ring::Ring;

/// A bounded cochain complex `terms[0] -> terms[1] -> ...` placed in
/// degrees `lowest, lowest + 1, ...`.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    pub ring: Ring,
    pub lowest: i64,
    pub terms: Vec<PresentedModule>,
    /// `maps[i]: terms[i] -> terms[i + 1]`.
    pub maps: Vec<ModuleMap>,
}

impl ModuleComplex {
    pub fn new(ring: &Ring, lowest: i64, terms: Vec<PresentedModule>, maps: Vec<ModuleMap>) -> Result<Self> {
        if terms.is_empty() || maps.len() + 1 != terms.len() {
            return Err(Error::InvalidInput("a complex needs one map between consecutive terms".into()));
        }
        for (i, f) in maps.iter().enumerate() {
            ring.check_same(f.ring())?;
            if f.source.gens() != terms[i].gens() || f.target.gens() != terms[i + 1].gens() {
                return Err(Error::InvalidInput(format!("map {i} does not match its terms")));
            }
            f.check_well_defined()?;
        }
        let c = ModuleComplex { ring: ring.clone(), lowest, terms, maps };
        if !c.squares_to_zero()? {
            return Err(Error::InvalidInput("d^2 != 0".into()));
        }
        Ok(c)
    }

    /// `N` in degree 0.
    pub fn single(n: &PresentedModule) -> Self {
        ModuleComplex { ring: n.ring().clone(), lowest: 0, terms: vec![n.clone()], maps: Vec::new() }
    }

    /// `N -g-> N'` in degrees -1, 0.
    pub fn two_term(g: &ModuleMap) -> Result<Self> {
        Self::new(g.ring(), -1, vec![g.source.clone(), g.target.clone()], vec![g.clone()])
    }

    pub fn degree_of(&self, i: usize) -> i64 {
        self.lowest + i as i64
    }

    pub fn squares_to_zero(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cohomology in degree `d` as a presented module.
    pub fn cohomology(&self, d: i64) -> Result<PresentedModule> {
        let i = d - self.lowest;
        if i < 0 || i as usize >= self.terms.len() {
            return Ok(PresentedModule::zero(&self.ring));
        }
        let i = i as usize;
        let t = &self.terms[i];
        let out = match self.maps.get(i) {
            Some(f) => f.clone(),
            None => ModuleMap::zero(t, &PresentedModule::zero(&self.ring)),
        };
        let (z, incl) = kernel(&out)?;
        let Some(inc) = i.checked_sub(1).map(|k| &self.maps[k]) else { return Ok(z) };
        // Lift the incoming map through the cycle inclusion.
        let mut cols = incl.matrix.columns();
        let nz = cols.len();
        cols.extend(t.relations().columns());
        let mut lifted = Vec::new();
        if !cols.is_empty() {
            let solver = crate::homalg::linalg::Solver::new(&self.ring, t.gens(), &cols)?;
            for c in inc.matrix.columns() {
                let x = solver.solve(&c).ok_or_else(|| Error::Internal("boundary is not a cycle".into()))?;
                lifted.push(x[..nz].to_vec());
            }
        }
        let b = crate::matrix::Matrix::from_columns(&self.ring, nz, &lifted);
        let (h, _) = cokernel(&ModuleMap::unchecked(inc.source.clone(), z, b)?)?;
        Ok(h)
    }

    /// Exact everywhere.
    pub fn is_acyclic(&self) -> Result<bool> {
        if self.terms.len() == 1 {
            return self.terms[0].is_zero();
        }
        let zero = PresentedModule::zero(&self.ring);
        let first = ModuleMap::zero(&zero, &self.terms[0]);
        let last = ModuleMap::zero(self.terms.last().unwrap(), &zero);
        let mut seq = vec![first];
        seq.extend(self.maps.iter().cloned());
        seq.push(last);
        for w in seq.windows(2) {
            if !is_exact_at(&w[0], &w[1])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
