mod common;

use common::*;
use klr_core::engine::Engine;
use klr_core::lie::root_vectors_up_to;
use klr_core::oracle::{act_word, PolyVector};
use klr_core::relations::{relation_instances, verify_relations, Combination};
use klr_core::Int;

#[test]
fn engine_satisfies_every_relation() {
    let engine = Engine::default();
    for alpha in root_vectors_up_to(4, &[1, 2, 3]) {
        let report = verify_relations(&engine, &alpha).unwrap();
        assert!(report.passed(), "{report}");
    }
}

fn act_combination(c: &Combination, v: &PolyVector) -> PolyVector {
    let mut out = PolyVector::zero(v.alpha());
    for (k, w) in c {
        out = out.add(&act_word(w, v).unwrap().scale(&Int::from(*k)));
    }
    out
}

#[test]
fn oracle_satisfies_every_relation() {
    let mut rng = rng(11);
    for alpha in root_vectors_up_to(4, &[1, 2, 3]) {
        let vectors: Vec<PolyVector> = (0..3).map(|_| random_vector(&mut rng, &alpha, 8)).collect();
        for inst in relation_instances(&alpha).unwrap() {
            for v in &vectors {
                let lhs = act_combination(&inst.lhs, v);
                let rhs = act_combination(&inst.rhs, v);
                assert_eq!(lhs, rhs, "{inst} on {v:?}");
            }
        }
    }
}
