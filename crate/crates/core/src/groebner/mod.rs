//! Gröbner bases of submodules of free modules over the polynomial cover.
//!
//! Everything here works over `P = k[x_1..x_n]`; quotient rings are handled
//! by callers adjoining `I * e_i` to the generators (see
//! [`crate::ring::RingPresentation::submodule_gens`]).
//!
//! Syzygies and lifts come from one computation: the generators `g_j` are
//! embedded as `(g_j, e_j)` in `P^(r+m)` and a position-over-term basis of
//! this graph module is computed. Elements whose leading position lies in
//! the tail are exactly a generating set of the syzygy module; reducing
//! `(v, 0)` leaves `(0, -c)` precisely when `v = sum c_j g_j`.

mod buchberger;
mod vector;

use std::sync::Arc;

pub use buchberger::with_degree_limit;
pub use vector::{Ctx, ModuleOrder, SVec};

use crate::error::Result;
use crate::ring::{PolyRing, Polynomial};

/// Dense free-module element over the cover.
pub type Vector = Vec<Polynomial>;

/// A reduced Gröbner basis of a submodule of `P^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: Ctx,
    rank: usize,
    elems: Vec<SVec>,
}

impl GroebnerBasis {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, gens: &[Vector], order: ModuleOrder) -> Result<Self> {
        let ctx = Ctx::new(ring, order);
        let svecs = gens.iter().map(|g| SVec::from_dense(&ctx, g)).collect();
        let elems = buchberger::buchberger(&ctx, svecs, rank)?;
        Ok(GroebnerBasis { ctx, rank, elems })
    }

    /// Basis of the ideal generated by `gens`.
    pub fn ideal(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Self> {
        let vs: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::new(ring, 1, &vs, ModuleOrder::PositionOverTerm)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ctx.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> ModuleOrder {
        self.ctx.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn generators(&self) -> Vec<Vector> {
        self.elems.iter().map(|e| e.to_dense(&self.ctx, self.rank)).collect()
    }

    /// Generators of an ideal basis as polynomials.
    pub fn polys(&self) -> Vec<Polynomial> {
        assert_eq!(self.rank, 1);
        self.generators().into_iter().map(|mut v| v.remove(0)).collect()
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Vector {
        let s = SVec::from_dense(&self.ctx, v);
        buchberger::reduce(&self.ctx, &s, &self.elems).to_dense(&self.ctx, self.rank)
    }

    pub fn normal_form_poly(&self, p: &Polynomial) -> Polynomial {
        self.normal_form(std::slice::from_ref(p)).remove(0)
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        let s = SVec::from_dense(&self.ctx, v);
        buchberger::reduce(&self.ctx, &s, &self.elems).is_zero()
    }

    /// The submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|i| {
            self.elems
                .iter()
                .any(|g| matches!(g.lead(), Some((p, m, _)) if *p == i && m.is_one()))
        })
    }

    /// Adds generators, reusing this basis as the starting point.
    pub fn extend(&self, more: &[Vector]) -> Result<Self> {
        let mut gens: Vec<SVec> = self.elems.clone();
        gens.extend(more.iter().map(|g| SVec::from_dense(&self.ctx, g)));
        let elems = buchberger::buchberger(&self.ctx, gens, self.rank)?;
        Ok(GroebnerBasis { ctx: self.ctx.clone(), rank: self.rank, elems })
    }

    /// Checks that every S-vector of the basis reduces to zero and that no
    /// leading term divides another.
    pub fn satisfies_criterion(&self) -> bool {
        let f = &self.ctx.ring.field;
        for (i, a) in self.elems.iter().enumerate() {
            for (j, b) in self.elems.iter().enumerate() {
                let (pa, la, ca) = a.lead().unwrap();
                let (pb, lb, cb) = b.lead().unwrap();
                if i != j && pa == pb && la.divides(lb) {
                    return false;
                }
                if i >= j || pa != pb {
                    continue;
                }
                let lcm = la.lcm(lb);
                let left = SVec {
                    terms: a
                        .scale(&self.ctx, &f.inv(ca))
                        .terms
                        .into_iter()
                        .map(|(p, m, c)| (p, m.mul(&la.quotient_of(&lcm)), c))
                        .collect(),
                };
                let s = left.sub_mul(&self.ctx, b, &lb.quotient_of(&lcm), &f.inv(cb));
                if !buchberger::reduce(&self.ctx, &s, &self.elems).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Solves membership problems with explicit cofactors for a fixed list of
/// generators, and produces their syzygies.
#[derive(Clone, Debug)]
pub struct LiftEngine {
    ctx: Ctx,
    rank: usize,
    ngens: usize,
    gb: Vec<SVec>,
}

impl LiftEngine {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, gens: &[Vector]) -> Result<Self> {
        let ctx = Ctx::new(ring, ModuleOrder::PositionOverTerm);
        let m = gens.len();
        let ext: Vec<SVec> = gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let mut v = g.clone();
                for k in 0..m {
                    v.push(if k == j { Polynomial::one(ring) } else { Polynomial::zero(ring) });
                }
                SVec::from_dense(&ctx, &v)
            })
            .collect();
        let gb = buchberger::buchberger(&ctx, ext, rank + m)?;
        Ok(LiftEngine { ctx, rank, ngens: m, gb })
    }

    /// Coefficients `c` with `sum c_j g_j = target`, or `None`.
    pub fn lift(&self, target: &[Polynomial]) -> Option<Vector> {
        let ring = &self.ctx.ring;
        let mut v = target.to_vec();
        v.extend((0..self.ngens).map(|_| Polynomial::zero(ring)));
        let s = SVec::from_dense(&self.ctx, &v);
        let r = buchberger::reduce(&self.ctx, &s, &self.gb);
        if r.terms.iter().any(|t| t.0 < self.rank) {
            return None;
        }
        let dense = r.to_dense(&self.ctx, self.rank + self.ngens);
        Some(dense[self.rank..].iter().map(|p| p.neg()).collect())
    }

    /// Generators of the module of relations among the generators.
    pub fn syzygies(&self) -> Vec<Vector> {
        self.gb
            .iter()
            .filter(|g| g.lead().is_some_and(|t| t.0 >= self.rank))
            .map(|g| g.to_dense(&self.ctx, self.rank + self.ngens)[self.rank..].to_vec())
            .collect()
    }
}

/// Generators of all relations `sum s_j gens_j = 0` over the cover.
pub fn syzygies(ring: &Arc<PolyRing>, rank: usize, gens: &[Vector]) -> Result<Vec<Vector>> {
    Ok(LiftEngine::new(ring, rank, gens)?.syzygies())
}

/// Expresses `target` in terms of `gens`, if possible.
pub fn lift(ring: &Arc<PolyRing>, target: &[Polynomial], gens: &[Vector]) -> Result<Option<Vector>> {
    Ok(LiftEngine::new(ring, target.len(), gens)?.lift(target))
}
