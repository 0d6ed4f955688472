//! Seeded generators of random rings, polynomials, factorizations and
//! modules shared by the property and acceptance suites.
#![allow(dead_code)]

use std::sync::Arc;

use mfwork::homalg::PresentedModule;
use mfwork::matrix::Matrix;
use mfwork::mf::{CoherentFactorization, MFMorphism, MatrixFactorization, Potential};
use mfwork::ring::{Field, Monomial, PolyRing, Polynomial, Ring, RingPresentation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(field: Field, vars: &[&str], graded: bool) -> Ring {
    let mut cover = (*PolyRing::new(field, vars)).clone();
    if graded {
        cover.weights = Some(vec![1; vars.len()]);
    }
    RingPresentation::polynomial(&Arc::new(cover))
}

pub fn mat(r: &Ring, rows: &[Vec<&str>]) -> Matrix {
    Matrix::parse_rows(r, rows).unwrap()
}

/// A potential with rank-one or rank-two building blocks whose `Φ` entries
/// are all linear, so constant base changes keep everything graded.
pub struct Family {
    pub name: &'static str,
    pub potential: Potential,
    pub blocks: Vec<MatrixFactorization>,
}

fn family(name: &'static str, vars: &[&str], w: &str, graded: bool, blocks: &[(Vec<Vec<&str>>, Vec<Vec<&str>>)]) -> Family {
    let r = ring(Field::Rational, vars, graded);
    let potential = Potential::parse(&r, w).unwrap();
    let blocks = blocks.iter().map(|(a, b)| MatrixFactorization::new(&potential, mat(&r, a), mat(&r, b)).unwrap()).collect();
    Family { name, potential, blocks }
}

pub fn node(graded: bool) -> Family {
    family(
        "xy",
        &["x", "y"],
        "x*y",
        graded,
        &[
            (vec![vec!["x"]], vec![vec!["y"]]),
            (vec![vec!["y"]], vec![vec!["x"]]),
            (vec![vec!["x", "y"], vec!["0", "-y"]], vec![vec!["y", "y"], vec!["0", "-x"]]),
        ],
    )
}

pub fn a1(graded: bool) -> Family {
    family("x^2+yz", &["x", "y", "z"], "x^2 + y*z", graded, &[(vec![vec!["x", "y"], vec!["z", "-x"]], vec![vec!["x", "y"], vec!["z", "-x"]])])
}

pub fn triple(graded: bool) -> Family {
    family(
        "xyz",
        &["x", "y", "z"],
        "x*y*z",
        graded,
        &[
            (vec![vec!["x"]], vec![vec!["y*z"]]),
            (vec![vec!["y"]], vec![vec!["x*z"]]),
            (vec![vec!["z"]], vec![vec!["x*y"]]),
        ],
    )
}

pub fn families(graded: bool) -> Vec<Family> {
    vec![node(graded), a1(graded), triple(graded)]
}

pub fn random_coeff(rng: &mut Rand, r: &Ring) -> Polynomial {
    let c = rng.gen_range(-3i64..=3);
    Polynomial::from_i64(r.cover(), if c == 0 { 1 } else { c })
}

/// Up to `terms` terms of total degree at most `deg`, small coefficients.
pub fn random_poly(rng: &mut Rand, cover: &Arc<PolyRing>, terms: usize, deg: u32) -> Polynomial {
    let n = cover.nvars();
    let mut p = Polynomial::zero(cover);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut e = vec![0u32; n];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = cover.field.from_i64(rng.gen_range(-4i64..=4));
        p = p.add(&Polynomial::term(cover, Monomial(e.into()), c));
    }
    p
}

/// Elementary matrix `I + c e_ij` and its inverse.
fn elementary(r: &Ring, n: usize, i: usize, j: usize, c: &Polynomial) -> (Matrix, Matrix) {
    let mut e = Matrix::identity(r, n);
    let mut inv = Matrix::identity(r, n);
    e.set(i, j, c.clone());
    inv.set(i, j, c.neg());
    (e, inv)
}

/// `(A, A^{-1})` as a product of `steps` elementary matrices; constant
/// entries when `constant`, otherwise low-degree polynomial entries.
pub fn random_unimodular(rng: &mut Rand, r: &Ring, n: usize, steps: usize, constant: bool) -> (Matrix, Matrix) {
    let mut a = Matrix::identity(r, n);
    let mut inv = Matrix::identity(r, n);
    if n < 2 {
        return (a, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = if constant { random_coeff(rng, r) } else { r.reduce(&random_poly(rng, r.cover(), 2, 1)) };
        let (e, ei) = elementary(r, n, i, j, &c);
        a = a.mul(&e);
        inv = ei.mul(&inv);
    }
    (a, inv)
}

/// A direct sum of building blocks of total rank at most `max_rank` (or the
/// smallest block if none fits), moved
/// by random base changes `Φ -> AΦB`, `Ψ -> B^{-1}ΨA^{-1}`.
pub fn random_mf(rng: &mut Rand, fam: &Family, max_rank: usize, constant: bool) -> MatrixFactorization {
    let mut m = MatrixFactorization::zero(&fam.potential);
    loop {
        let b = fam.blocks.choose(rng).unwrap();
        if m.rank() + b.rank() > max_rank {
            break;
        }
        m = m.direct_sum(b).unwrap();
        if m.rank() > 0 && rng.gen_bool(0.4) {
            break;
        }
    }
    if m.rank() == 0 {
        m = fam.blocks.iter().min_by_key(|b| b.rank()).unwrap().clone();
    }
    let r = fam.potential.ring();
    let n = m.rank();
    let (a, ai) = random_unimodular(rng, r, n, 3, constant);
    let (b, bi) = random_unimodular(rng, r, n, 3, constant);
    MatrixFactorization::new(&fam.potential, a.mul(&m.phi).mul(&b), bi.mul(&m.psi).mul(&ai)).unwrap()
}

/// A random closed degree-0 morphism `d(h)`, plus the identity when source
/// and target agree.
pub fn random_closed_morphism(rng: &mut Rand, m: &MatrixFactorization, n: &MatrixFactorization) -> MFMorphism {
    let r = m.ring();
    let cover = r.cover().clone();
    let mut entries = |rows: usize, cols: usize| {
        let data = (0..rows * cols).map(|_| r.reduce(&random_poly(rng, &cover, 2, 1))).collect();
        Matrix::from_row_major(r, rows, cols, data).unwrap()
    };
    let (mc, nc) = (m.to_coherent(), n.to_coherent());
    let h = MFMorphism::new(&mc, &nc, 1, entries(n.rank(), m.rank()), entries(n.rank(), m.rank())).unwrap();
    let d = h.differential();
    if m.same(n) {
        let id = MFMorphism::identity(&mc);
        MFMorphism::new(&mc, &nc, 0, id.f0.add(&d.f0), id.f1.add(&d.f1)).unwrap()
    } else {
        d
    }
}

/// Cokernel of a random `g x c` matrix over `S` with `g, c <= 2` and
/// monomial entries of degree at most 2.
pub fn random_module(rng: &mut Rand, s: &Ring) -> PresentedModule {
    let g = rng.gen_range(1..=2);
    let c = rng.gen_range(1..=2);
    let cover = s.cover().clone();
    let n = cover.nvars();
    let data = (0..g * c)
        .map(|_| {
            if rng.gen_bool(0.3) {
                return s.zero();
            }
            let mut e = vec![0u32; n];
            for _ in 0..rng.gen_range(1..=2) {
                e[rng.gen_range(0..n)] += 1;
            }
            s.reduce(&Polynomial::term(&cover, Monomial(e.into()), cover.field.one()))
        })
        .collect();
    PresentedModule::new(Matrix::from_row_major(s, g, c, data).unwrap(), None).unwrap()
}

pub fn coherent(m: &MatrixFactorization) -> CoherentFactorization {
    m.to_coherent()
}
