mod common;

use common::*;
use klr_core::engine::{pbw_basis_at_degree, Element, Engine};
use klr_core::lie::root_vectors_up_to;
use klr_core::Int;
use proptest::prelude::*;

fn seeded() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associative(seed in seeded()) {
        let engine = Engine::default();
        let mut rng = rng(seed);
        let a = random_alpha(&mut rng);
        let x = random_sum(&mut rng, &engine, &a, 4);
        let y = random_sum(&mut rng, &engine, &a, 4);
        let z = random_sum(&mut rng, &engine, &a, 4);
        let left = engine.mul(&engine.mul(&x, &y).unwrap(), &z).unwrap();
        let right = engine.mul(&x, &engine.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn homogeneous_products(seed in seeded()) {
        let engine = Engine::default();
        let mut rng = rng(seed);
        let a = random_alpha(&mut rng);
        let x = random_element(&mut rng, &engine, &a, 5);
        let y = random_element(&mut rng, &engine, &a, 5);
        let xy = engine.mul(&x, &y).unwrap();
        if !xy.is_zero() {
            let (dx, dy) = (x.homogeneous_degree().unwrap(), y.homogeneous_degree().unwrap());
            prop_assert_eq!(xy.homogeneous_degree(), Some(dx + dy));
        }
    }

    #[test]
    fn tau_is_a_graded_anti_involution(seed in seeded()) {
        let engine = Engine::default();
        let mut rng = rng(seed);
        let a = random_alpha(&mut rng);
        let x = random_sum(&mut rng, &engine, &a, 4);
        let y = random_sum(&mut rng, &engine, &a, 4);
        let txy = engine.tau(&engine.mul(&x, &y).unwrap());
        let tytx = engine.mul(&engine.tau(&y), &engine.tau(&x)).unwrap();
        prop_assert_eq!(txy, tytx);
        prop_assert_eq!(engine.tau(&engine.tau(&x)), x.clone());
        prop_assert_eq!(engine.tau(&x).degrees(), x.degrees());
    }

    #[test]
    fn fast_product_matches_generator_fold(seed in seeded()) {
        let engine = Engine::default();
        let mut rng = rng(seed);
        let a = random_alpha(&mut rng);
        let x = random_sum(&mut rng, &engine, &a, 5);
        let y = random_sum(&mut rng, &engine, &a, 5);
        prop_assert_eq!(engine.mul(&x, &y).unwrap(), engine.mul_by_generators(&x, &y).unwrap());
    }

    #[test]
    fn generator_words_multiply_out(seed in seeded()) {
        let engine = Engine::default();
        let mut rng = rng(seed);
        let a = random_alpha(&mut rng);
        let gens = random_generators(&mut rng, &a, 6);
        let folded = gens
            .iter()
            .map(|g| engine.generator(g, &a).unwrap())
            .reduce(|acc, g| engine.mul(&acc, &g).unwrap())
            .unwrap();
        prop_assert_eq!(folded, engine.word_product(&gens, &a).unwrap());
    }
}

#[test]
fn pbw_monomials_round_trip() {
    let engine = Engine::default();
    for a in root_vectors_up_to(4, &[1, 2, 3]) {
        let d = a.height() as i64;
        let lo = -d * (d - 1);
        for n in lo..=4 {
            for t in pbw_basis_at_degree(&a, n).unwrap() {
                let back = engine.word_product(&Engine::generator_sequence(&t), &a).unwrap();
                assert_eq!(back, Element::monomial(&t, Int::from(1)), "{t:?}");
                assert_eq!(back.homogeneous_degree(), Some(n));
            }
        }
    }
}
