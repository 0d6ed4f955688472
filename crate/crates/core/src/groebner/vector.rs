//! Sparse free-module elements `sum c * m * e_pos` kept sorted under a
//! module order.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::ring::{Coeff, Monomial, PolyRing, Polynomial};

/// How positions interact with the monomial order. In both variants a
/// smaller position index ranks higher.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ModuleOrder {
    /// Position over term: compare positions first.
    #[default]
    PositionOverTerm,
    /// Term over position: compare monomials first.
    TermOverPosition,
}

#[derive(Clone, Debug)]
pub struct Ctx {
    pub ring: Arc<PolyRing>,
    pub order: ModuleOrder,
}

pub type Term = (usize, Monomial, Coeff);

impl Ctx {
    pub fn new(ring: &Arc<PolyRing>, order: ModuleOrder) -> Self {
        Ctx { ring: ring.clone(), order }
    }

    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        let pos = || b.0.cmp(&a.0);
        let mono = || self.ring.order.cmp(a.1, b.1);
        match self.order {
            ModuleOrder::PositionOverTerm => pos().then_with(mono),
            ModuleOrder::TermOverPosition => mono().then_with(pos),
        }
    }
}

/// Terms sorted strictly descending, nonzero coefficients only.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SVec {
    pub terms: Vec<Term>,
}

impl SVec {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn from_dense(ctx: &Ctx, v: &[Polynomial]) -> Self {
        let mut terms: Vec<Term> = Vec::new();
        for (pos, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((pos, m.clone(), c.clone()));
            }
        }
        terms.sort_by(|a, b| ctx.cmp((b.0, &b.1), (a.0, &a.1)));
        SVec { terms }
    }

    pub fn to_dense(&self, ctx: &Ctx, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for (pos, m, c) in &self.terms {
            buckets[*pos].push((m.clone(), c.clone()));
        }
        buckets.into_iter().map(|t| Polynomial::from_terms(&ctx.ring, t)).collect()
    }

    /// Degree used for sugar bookkeeping.
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, ctx: &Ctx, c: &Coeff) -> SVec {
        let f = &ctx.ring.field;
        SVec { terms: self.terms.iter().map(|(p, m, d)| (*p, m.clone(), f.mul(c, d))).collect() }
    }

    /// Scales to a canonical representative (primitive integer content over
    /// the rationals, monic over prime fields).
    pub fn normalize(&mut self, ctx: &Ctx) {
        if self.terms.is_empty() {
            return;
        }
        let f = &ctx.ring.field;
        let s = f.normalizer(self.terms.iter().map(|t| &t.2));
        if !f.is_one(&s) {
            for t in &mut self.terms {
                t.2 = f.mul(&t.2, &s);
            }
        }
    }

    pub fn make_monic(&mut self, ctx: &Ctx) {
        if let Some(lc) = self.terms.first().map(|t| t.2.clone()) {
            let f = &ctx.ring.field;
            if !f.is_one(&lc) {
                let inv = f.inv(&lc);
                for t in &mut self.terms {
                    t.2 = f.mul(&t.2, &inv);
                }
            }
        }
    }

    /// `self - c * m * other`
    pub fn sub_mul(&self, ctx: &Ctx, other: &SVec, m: &Monomial, c: &Coeff) -> SVec {
        let f = &ctx.ring.field;
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let b: Vec<Term> = other
            .terms
            .iter()
            .map(|(p, n, d)| (*p, n.mul(m), f.neg(&f.mul(c, d))))
            .collect();
        while i < a.len() && j < b.len() {
            match ctx.cmp((a[i].0, &a[i].1), (b[j].0, &b[j].1)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(&a[i].2, &b[j].2);
                    if !f.is_zero(&s) {
                        out.push((a[i].0, a[i].1.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SVec { terms: out }
    }

    pub fn add(&self, ctx: &Ctx, other: &SVec) -> SVec {
        let one = ctx.ring.field.from_i64(-1);
        let m = Monomial::one(ctx.ring.nvars());
        self.sub_mul(ctx, other, &m, &one)
    }
}
