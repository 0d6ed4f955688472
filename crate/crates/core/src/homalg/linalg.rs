//! Linear algebra over a ring presentation `R = P/I`, reduced to Gröbner
//! computations over the cover `P`.

use crate::error::Result;
use crate::groebner::{LiftEngine, Vector};
use crate::ring::{Polynomial, Ring, RingPresentation};

fn ideal_rows(ring: &RingPresentation, rank: usize) -> Vec<Vector> {
    ring.submodule_gens(rank, &[])
}

/// Generators of `{c : sum c_j cols_j = 0 in R^rank}`.
pub fn syzygies(ring: &Ring, rank: usize, cols: &[Vector]) -> Result<Vec<Vector>> {
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let mut gens = cols.to_vec();
    gens.extend(ideal_rows(ring, rank));
    let engine = LiftEngine::new(ring.cover(), rank, &gens)?;
    let m = cols.len();
    let mut out = Vec::new();
    for s in engine.syzygies() {
        let v: Vector = s[..m].iter().map(|p| ring.reduce(p)).collect();
        if v.iter().any(|p| !p.is_zero()) {
            out.push(v);
        }
    }
    Ok(out)
}

/// A reusable solver for `sum c_j cols_j = target` in `R^rank`.
pub struct Solver {
    ring: Ring,
    ncols: usize,
    engine: LiftEngine,
}

impl Solver {
    pub fn new(ring: &Ring, rank: usize, cols: &[Vector]) -> Result<Self> {
        let mut gens = cols.to_vec();
        gens.extend(ideal_rows(ring, rank));
        Ok(Solver { ring: ring.clone(), ncols: cols.len(), engine: LiftEngine::new(ring.cover(), rank, &gens)? })
    }

    pub fn solve(&self, target: &[Polynomial]) -> Option<Vector> {
        self.engine
            .lift(target)
            .map(|c| c[..self.ncols].iter().map(|p| self.ring.reduce(p)).collect())
    }

    pub fn syzygies(&self) -> Vec<Vector> {
        self.engine
            .syzygies()
            .into_iter()
            .map(|s| s[..self.ncols].iter().map(|p| self.ring.reduce(p)).collect::<Vector>())
            .filter(|v| v.iter().any(|p| !p.is_zero()))
            .collect()
    }
}

pub fn solve(ring: &Ring, target: &[Polynomial], cols: &[Vector]) -> Result<Option<Vector>> {
    Ok(Solver::new(ring, target.len(), cols)?.solve(target))
}

pub fn combine(ring: &Ring, rank: usize, cols: &[Vector], coeffs: &[Polynomial]) -> Vector {
    let mut acc: Vector = (0..rank).map(|_| ring.zero()).collect();
    for (c, col) in coeffs.iter().zip(cols) {
        if c.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(col) {
            *a = a.add(&c.mul(x));
        }
    }
    acc.iter().map(|p| ring.reduce(p)).collect()
}

/// Weighted degree of a homogeneous column given the degrees of the
/// ambient basis; `None` for zero columns.
pub fn column_degree(ring: &RingPresentation, col: &[Polynomial], row_degrees: &[i64]) -> Option<i64> {
    let w = ring.weights()?;
    col.iter().zip(row_degrees).find_map(|(p, d)| match p.homogeneous_degree(w) {
        Some(Some(e)) => Some(e as i64 + d),
        _ => None,
    })
}

pub fn is_homogeneous_column(ring: &RingPresentation, col: &[Polynomial], row_degrees: &[i64]) -> bool {
    let Some(w) = ring.weights() else { return false };
    let mut deg = None;
    for (p, d) in col.iter().zip(row_degrees) {
        match p.homogeneous_degree(w) {
            None => return false,
            Some(None) => {}
            Some(Some(e)) => {
                let t = e as i64 + d;
                if deg.is_some_and(|x| x != t) {
                    return false;
                }
                deg = Some(t);
            }
        }
    }
    true
}

/// Greedy irredundant generating set of the submodule spanned by `cols`
/// together with `base` (which is always kept out of the result). In the
/// graded case columns are visited by increasing degree, which yields a
/// minimal generating set.
pub fn minimal_generators(
    ring: &Ring,
    rank: usize,
    cols: &[Vector],
    base: &[Vector],
    row_degrees: Option<&[i64]>,
) -> Result<Vec<Vector>> {
    let mut order: Vec<usize> = (0..cols.len()).collect();
    if let Some(d) = row_degrees {
        order.sort_by_key(|&j| column_degree(ring, &cols[j], d).unwrap_or(i64::MAX));
    }
    let mut kept: Vec<Vector> = Vec::new();
    let mut gb = ring.submodule_gb(rank, base)?;
    for j in order {
        let c = &cols[j];
        if c.iter().all(|p| p.is_zero()) || gb.contains(c) {
            continue;
        }
        gb = gb.extend(std::slice::from_ref(c))?;
        kept.push(c.clone());
    }
    // Dropping a later generator can make an earlier one redundant only in
    // the ungraded case; one backward sweep catches that.
    if row_degrees.is_none() && kept.len() > 1 {
        let mut k = kept.len();
        while k > 0 {
            k -= 1;
            let mut others: Vec<Vector> = base.to_vec();
            others.extend(kept.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, v)| v.clone()));
            if ring.submodule_gb(rank, &others)?.contains(&kept[k]) {
                kept.remove(k);
            }
        }
    }
    Ok(kept)
}
