//! Buchberger's algorithm for submodules of `P^r`, with the sugar selection
//! strategy and the Gebauer–Möller pair update.

use std::cell::Cell;

use super::vector::{Ctx, SVec};
use crate::error::{Error, Result};
use crate::ring::Monomial;

thread_local! {
    static DEGREE_LIMIT: Cell<Option<u32>> = const { Cell::new(None) };
}

/// Runs `f` with a bound on the sugar degree of S-pairs. Computations that
/// would exceed it fail with [`Error::Exhausted`].
pub fn with_degree_limit<T>(limit: Option<u32>, f: impl FnOnce() -> T) -> T {
    let prev = DEGREE_LIMIT.with(|c| c.replace(limit));
    let out = f();
    DEGREE_LIMIT.with(|c| c.set(prev));
    out
}

fn degree_limit() -> Option<u32> {
    DEGREE_LIMIT.with(|c| c.get())
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Index of the first basis element whose leading term divides `(pos, m)`.
pub(crate) fn find_reducer(basis: &[SVec], pos: usize, m: &Monomial) -> Option<usize> {
    basis.iter().position(|g| match g.lead() {
        Some((p, lm, _)) => *p == pos && lm.divides(m),
        None => false,
    })
}

/// Full reduction of `v` by `basis`. The remainder has no term divisible by
/// a leading term of the basis.
pub(crate) fn reduce(ctx: &Ctx, v: &SVec, basis: &[SVec]) -> SVec {
    let f = &ctx.ring.field;
    let mut work = v.clone();
    let mut rem: Vec<_> = Vec::new();
    while let Some((pos, m, c)) = work.terms.first().cloned() {
        match find_reducer(basis, pos, &m) {
            Some(k) => {
                let (_, lm, lc) = basis[k].lead().unwrap();
                let q = lm.quotient_of(&m);
                work = work.sub_mul(ctx, &basis[k], &q, &f.div(&c, lc));
            }
            None => {
                rem.push(work.terms.remove(0));
            }
        }
    }
    SVec { terms: rem }
}

fn s_vector(ctx: &Ctx, a: &SVec, b: &SVec, lcm: &Monomial) -> SVec {
    let f = &ctx.ring.field;
    let (_, la, ca) = a.lead().unwrap();
    let (_, lb, cb) = b.lead().unwrap();
    let ma = la.quotient_of(lcm);
    let mb = lb.quotient_of(lcm);
    let left = a.scale(ctx, &f.inv(ca));
    let left = SVec { terms: left.terms.into_iter().map(|(p, m, c)| (p, m.mul(&ma), c)).collect() };
    left.sub_mul(ctx, b, &mb, &f.inv(cb))
}

/// Computes the reduced Gröbner basis of the submodule generated by `gens`.
pub(crate) fn buchberger(ctx: &Ctx, gens: Vec<SVec>, rank: usize) -> Result<Vec<SVec>> {
    let mut basis: Vec<SVec> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let limit = degree_limit();

    // Seed with the autoreduced input, smallest leading terms first.
    let mut seeds: Vec<SVec> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    seeds.sort_by(|a, b| {
        let (pa, ma, _) = a.lead().unwrap();
        let (pb, mb, _) = b.lead().unwrap();
        ctx.cmp((*pa, ma), (*pb, mb))
    });
    for g in seeds {
        let mut h = reduce(ctx, &g, &basis);
        if h.is_zero() {
            continue;
        }
        h.normalize(ctx);
        let s = h.max_degree();
        update(&mut basis, &mut sugar, &mut pairs, h, s, rank);
    }

    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| {
                    let pa = basis[pairs[a].i].lead().unwrap().0;
                    let pb = basis[pairs[b].i].lead().unwrap().0;
                    ctx.cmp((pa, &pairs[a].lcm), (pb, &pairs[b].lcm))
                })
            })
            .unwrap();
        let p = pairs.swap_remove(k);
        if let Some(lim) = limit {
            if p.sugar > lim {
                return Err(Error::Exhausted(format!(
                    "Gröbner basis degree bound {lim} exceeded (S-pair of sugar {})",
                    p.sugar
                )));
            }
        }
        let s = s_vector(ctx, &basis[p.i], &basis[p.j], &p.lcm);
        let mut h = reduce(ctx, &s, &basis);
        if h.is_zero() {
            continue;
        }
        h.normalize(ctx);
        update(&mut basis, &mut sugar, &mut pairs, h, p.sugar, rank);
    }

    Ok(interreduce(ctx, basis))
}

fn update(
    basis: &mut Vec<SVec>,
    sugar: &mut Vec<u32>,
    pairs: &mut Vec<Pair>,
    h: SVec,
    h_sugar: u32,
    rank: usize,
) {
    let t = basis.len();
    let (hpos, hlm, _) = h.lead().cloned().unwrap();

    // Candidate pairs with the new element.
    let mut cands: Vec<(Pair, bool)> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (gpos, glm, _) = g.lead().unwrap();
        if *gpos != hpos {
            continue;
        }
        let lcm = glm.lcm(&hlm);
        let s = (sugar[i] + glm.quotient_of(&lcm).degree()).max(h_sugar + hlm.quotient_of(&lcm).degree());
        let coprime = rank == 1 && glm.coprime(&hlm);
        cands.push((Pair { i, j: t, lcm, sugar: s }, coprime));
    }

    // Chain criterion on the old pairs.
    pairs.retain(|p| {
        let ppos = basis[p.i].lead().unwrap().0;
        if ppos != hpos || !hlm.divides(&p.lcm) {
            return true;
        }
        let li = basis[p.i].lead().unwrap().1.lcm(&hlm);
        let lj = basis[p.j].lead().unwrap().1.lcm(&hlm);
        li == p.lcm || lj == p.lcm
    });

    // Among the new pairs keep only those whose lcm is minimal, one per lcm
    // class, dropping classes containing a coprime pair.
    let mut kept: Vec<Pair> = Vec::new();
    for (k, (p, _)) in cands.iter().enumerate() {
        let dominated = cands.iter().enumerate().any(|(l, (q, _))| {
            l != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || l < k)
        });
        if dominated {
            continue;
        }
        let class_coprime = cands.iter().any(|(q, c)| *c && q.lcm == p.lcm);
        if class_coprime {
            continue;
        }
        kept.push(p.clone());
    }
    pairs.extend(kept);
    basis.push(h);
    sugar.push(h_sugar);
}

/// Minimalizes and fully interreduces a Gröbner basis, making every element
/// monic so that the result is the unique reduced basis.
pub(crate) fn interreduce(ctx: &Ctx, basis: Vec<SVec>) -> Vec<SVec> {
    let mut minimal: Vec<SVec> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let (pos, lm, _) = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let (hp, hm, _) = h.lead().unwrap();
            l != k && *hp == *pos && hm.divides(lm) && (hm != lm || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| {
        let (pa, ma, _) = a.lead().unwrap();
        let (pb, mb, _) = b.lead().unwrap();
        ctx.cmp((*pb, mb), (*pa, ma))
    });
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let lead = minimal[k].terms[0].clone();
        let tail = SVec { terms: minimal[k].terms[1..].to_vec() };
        let others: Vec<SVec> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        let mut r = reduce(ctx, &tail, &others);
        r.terms.insert(0, lead);
        r.make_monic(ctx);
        out.push(r);
    }
    out
}
