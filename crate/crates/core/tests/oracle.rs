mod common;

use common::*;
use klr_core::engine::{pbw_basis_at_degree, Element, Engine};
use klr_core::lie::root_vectors_up_to;
use klr_core::oracle::{act, act_word};
use klr_core::zlattice::{Lattice, SparseVec};
use klr_core::Int;

#[test]
fn normal_forms_act_like_their_words() {
    let engine = Engine::default();
    let mut rng = rng(500);
    for _ in 0..500 {
        let a = random_alpha(&mut rng);
        let gens = random_generators(&mut rng, &a, 6);
        let x = engine.word_product(&gens, &a).unwrap();
        for _ in 0..5 {
            let v = random_vector(&mut rng, &a, 6);
            assert_eq!(act(&x, &v).unwrap(), act_word(&gens, &v).unwrap(), "{gens:?}");
        }
    }
}

#[test]
fn module_axiom() {
    let engine = Engine::default();
    let mut rng = rng(200);
    for _ in 0..200 {
        let a = random_alpha(&mut rng);
        let x = random_sum(&mut rng, &engine, &a, 4);
        let y = random_sum(&mut rng, &engine, &a, 4);
        let v = random_vector(&mut rng, &a, 6);
        let xy = engine.mul(&x, &y).unwrap();
        assert_eq!(act(&xy, &v).unwrap(), act(&x, &act(&y, &v).unwrap()).unwrap());
    }
}

#[test]
fn unit_acts_trivially() {
    let mut rng = rng(1);
    for a in root_vectors_up_to(4, &[1, 2, 3]) {
        let v = random_vector(&mut rng, &a, 6);
        assert_eq!(act(&Element::one(&a).unwrap(), &v).unwrap(), v);
    }
}

/// Distinct PBW monomials of one degree act by linearly independent
/// operators: their images of a fixed family of vectors are independent.
#[test]
fn pbw_monomials_act_independently() {
    let mut rng = rng(3);
    for a in root_vectors_up_to(3, &[1, 2, 3]) {
        let d = a.height() as i64;
        let probes: Vec<_> = (0..6).map(|_| random_vector(&mut rng, &a, 4)).collect();
        for n in -d * (d - 1)..=6 {
            let basis = pbw_basis_at_degree(&a, n).unwrap();
            let mut index = std::collections::HashMap::new();
            let mut rows = Vec::new();
            for t in &basis {
                let x = Element::monomial(t, Int::from(1));
                let mut entries = Vec::new();
                for (k, v) in probes.iter().enumerate() {
                    for (i, f) in act(&x, v).unwrap().components() {
                        for (m, c) in f.terms() {
                            let len = index.len();
                            let col = *index.entry((k, *i, *m)).or_insert(len);
                            entries.push((col, c.clone()));
                        }
                    }
                }
                rows.push(SparseVec::from_pairs(entries));
            }
            let mut lattice = Lattice::new(index.len());
            for r in rows {
                lattice.insert(r);
            }
            assert_eq!(lattice.rank(), basis.len(), "alpha {a} degree {n}");
        }
    }
}
