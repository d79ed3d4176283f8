mod common;

use common::*;
use klr_core::engine::{Engine, GeneratorSymbol};
use klr_core::nilhecke::{
    center_basis, e_a, monomial_symmetric, partitions, schubert_assemble, schubert_expand, schubert_expand_by_operators,
    verify_nil_hecke, NilHeckeContext,
};
use proptest::prelude::*;

#[test]
fn idempotent_and_absorbing() {
    let engine = Engine::default();
    for a in 1..=4 {
        let ctx = NilHeckeContext::new(a).unwrap();
        let e = e_a(a).unwrap();
        assert_eq!(engine.mul(&e, &e).unwrap(), e);
        assert_eq!(engine.mul(&e, &ctx.psi_w0()).unwrap(), ctx.psi_w0());
    }
}

#[test]
fn longest_operator_on_delta() {
    for a in 1..=5 {
        let ctx = NilHeckeContext::new(a).unwrap();
        let w0 = klr_core::lie::Permutation::longest(a);
        let f = klr_core::nilhecke::divided_difference_word(&w0, &klr_core::nilhecke::delta_poly(a));
        assert_eq!(f, klr_core::poly::Poly::one(), "a = {}", ctx.a());
    }
}

#[test]
fn symmetric_polynomials_are_central() {
    let engine = Engine::default();
    for a in 1..=4 {
        let ctx = NilHeckeContext::new(a).unwrap();
        let vars: Vec<usize> = (1..=a).collect();
        let mut gens: Vec<GeneratorSymbol> = (1..=a).map(GeneratorSymbol::Dot).collect();
        gens.extend((1..a).map(GeneratorSymbol::Crossing));
        for k in 0..=3 {
            for lambda in partitions(k, a) {
                let z = ctx.poly_element(&monomial_symmetric(&lambda, &vars));
                for g in &gens {
                    let g = engine.generator(g, &ctx.alpha()).unwrap();
                    assert_eq!(engine.mul(&z, &g).unwrap(), engine.mul(&g, &z).unwrap(), "{lambda:?}");
                }
            }
        }
        assert!(!center_basis(&engine, a, 2).unwrap().is_empty());
    }
}

#[test]
fn nil_hecke_claims() {
    let engine = Engine::default();
    for (a, n) in [(1, 8), (2, 8), (3, 8), (4, 4)] {
        let report = verify_nil_hecke(&engine, a, n).unwrap();
        assert!(report.passed(), "{report}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schubert_expansion_round_trips(seed in any::<u64>(), a in 1usize..=4) {
        let mut rng = rng(seed);
        let f = random_poly(&mut rng, a, 8, 5);
        let by_lattice = schubert_expand(&f, a).unwrap();
        prop_assert_eq!(schubert_assemble(&by_lattice), f.clone());
        prop_assert_eq!(schubert_expand_by_operators(&f, a).unwrap(), by_lattice);
    }
}
