//! Structural invariants checked on random instances. Each property draws a
//! seed and builds its instance with the shared generators, so a failing
//! case shrinks to a single reproducible seed.

mod common;

use common::*;
use mfwork::cli::{parse_instance, Instance, Object};
use mfwork::functors::{pullback, RingMap};
use mfwork::groebner::{GroebnerBasis, LiftEngine, Vector};
use mfwork::homalg::free_resolution;
use mfwork::matrix::Matrix;
use mfwork::mf::restrict_to_zero_locus;
use mfwork::ring::{Field, Polynomial};
use mfwork::singcat::verify_periodicity;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::Rng;

/// Fixed seed: every run draws the same cases.
fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, rng_seed: RngSeed::Fixed(0x6d66_776f_726b), ..ProptestConfig::default() }
}

fn field(i: u64) -> Field {
    if i.is_multiple_of(2) {
        Field::Rational
    } else {
        Field::prime(101).unwrap()
    }
}

fn nonzero_gens(rng: &mut Rand, c: &std::sync::Arc<mfwork::ring::PolyRing>) -> Vec<Polynomial> {
    loop {
        let g: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_poly(rng, c, 3, 3)).filter(|g| !g.is_zero()).collect();
        if !g.is_empty() {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn normal_form_is_idempotent_and_congruent(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let r = ring(field(seed), &["x", "y", "z"], false);
        let c = r.cover();
        let gb = GroebnerBasis::ideal(c, &nonzero_gens(&mut rng, c)).unwrap();
        let f = random_poly(&mut rng, c, 4, 4);
        let nf = gb.normal_form_poly(&f);
        prop_assert!(gb.normal_form_poly(&nf) == nf);
        prop_assert!(gb.contains(&[f.sub(&nf)]));
        prop_assert!(gb.satisfies_criterion());
    }

    #[test]
    fn lifts_recombine_and_syzygies_are_relations(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let r = ring(field(seed), &["x", "y"], false);
        let c = r.cover();
        let gens = nonzero_gens(&mut rng, c);
        let cols: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
        let engine = LiftEngine::new(c, 1, &cols).unwrap();
        let combine = |a: &[Polynomial]| gens.iter().zip(a).fold(Polynomial::zero(c), |acc, (g, x)| acc.add(&g.mul(x)));
        let coeffs: Vec<Polynomial> = gens.iter().map(|_| random_poly(&mut rng, c, 2, 2)).collect();
        let member = combine(&coeffs);
        let lift = engine.lift(std::slice::from_ref(&member));
        prop_assert!(lift.is_some());
        prop_assert!(combine(&lift.unwrap()) == member);
        for s in engine.syzygies() {
            prop_assert!(combine(&s).is_zero());
        }
    }

    #[test]
    fn constructions_stay_factorizations(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let fams = families(false);
        let fam = &fams[(seed % 3) as usize];
        let m = random_mf(&mut rng, fam, 3, false);
        let n = random_mf(&mut rng, fam, 2, false);
        prop_assert!(m.validate().is_none());
        prop_assert!(m.shift().validate().is_none());
        prop_assert!(m.shift().shift().same(&m));
        prop_assert!(m.dual().validate().is_none());
        prop_assert!(m.dual().dual().normalize_sign().same(&m));
        prop_assert!(m.direct_sum(&n).unwrap().validate().is_none());
        let f = random_closed_morphism(&mut rng, &m, &n);
        prop_assert!(f.is_closed().unwrap());
        let cone = f.cone(true).unwrap();
        prop_assert!(cone.validate().unwrap().is_none());
    }

    #[test]
    fn pullback_along_random_maps_factors(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let fams = families(false);
        let fam = &fams[(seed % 3) as usize];
        let m = random_mf(&mut rng, fam, 3, false);
        let r = fam.potential.ring();
        let target = ring(Field::Rational, &["s", "t"], false);
        let images: Vec<Polynomial> = (0..r.cover().nvars()).map(|_| random_poly(&mut rng, target.cover(), 2, 2)).collect();
        let f = RingMap::new(r, &target, images).unwrap();
        prop_assert!(pullback(&f, &m).unwrap().validate().is_none());
    }

    #[test]
    fn restriction_is_exact(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let fams = families(false);
        let fam = &fams[(seed % 3) as usize];
        let m = random_mf(&mut rng, fam, 3, false);
        let c = restrict_to_zero_locus(&m.to_coherent()).unwrap();
        prop_assert!(c.is_complex().unwrap());
        prop_assert!(c.verify_exact(2).unwrap());
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let r = ring(field(seed), &["x", "y", "z"], seed % 4 == 0);
        let (rows, cols) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let data = (0..rows * cols).map(|_| random_poly(&mut rng, r.cover(), 3, 3)).collect();
        let a = Matrix::from_row_major(&r, rows, cols, data).unwrap();
        let back = Matrix::parse(&r, &a.to_string()).unwrap();
        prop_assert!(back.same(&a));
        prop_assert_eq!(back.to_string(), a.to_string());
        for p in a.entries() {
            prop_assert!(&r.parse(&p.to_string()).unwrap() == p);
        }
    }

    #[test]
    fn instances_are_canonical(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let fams = families(seed % 2 == 0);
        let fam = &fams[(seed % 3) as usize];
        let mut inst = Instance::new(&fam.potential);
        inst.push("M", Object::Factorization { mf: random_mf(&mut rng, fam, 3, true), over: None }).unwrap();
        inst.push("N", Object::Coherent(random_mf(&mut rng, fam, 2, true).to_coherent())).unwrap();
        let text = inst.to_text();
        let again = parse_instance(&text).unwrap().to_text();
        prop_assert_eq!(again, text);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn resolution_maps_compose_to_zero(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let fams = families(true);
        let fam = &fams[(seed % 3) as usize];
        let n = random_module(&mut rng, fam.potential.zero_locus());
        let res = free_resolution(&n, 4, n.is_graded()).unwrap();
        for pair in res.maps.windows(2) {
            prop_assert!(pair[0].mul(&pair[1]).is_zero());
        }
    }

    #[test]
    fn periodic_pairs_factor_the_potential(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let fam = node(true);
        let n = random_module(&mut rng, fam.potential.zero_locus());
        let rep = verify_periodicity(&fam.potential, &n, 3).unwrap();
        if let Some(mf) = rep.factorization {
            prop_assert!(mf.validate().is_none());
        }
    }
}
