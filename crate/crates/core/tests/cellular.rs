use klr_core::cellular::{
    cell_labels, verify_affine_cellularity, verify_cell_chain, verify_cellular_basis, verify_quotient_structure,
    CellDatum, CellularStructure,
};
use klr_core::dimension::{c_pi, dim_check, l_pi};
use klr_core::engine::{crossing_degree, Engine};
use klr_core::lie::{min_coset_reps, root_partitions, root_vectors_up_to, RootVector};
use klr_core::qseries::QSeries;
use klr_core::Int;

fn alpha(s: &str) -> RootVector {
    RootVector::parse(s).unwrap()
}

#[test]
fn small_alphas_pass_all_suites() {
    let engine = Engine::default();
    for a in ["1:1", "1:2", "1:1,2:1"] {
        let a = alpha(a);
        for r in [
            verify_cell_chain(&engine, &a, 6).unwrap(),
            verify_cellular_basis(&engine, &a, 6).unwrap(),
            verify_affine_cellularity(&engine, &a, 6).unwrap(),
        ] {
            assert!(r.passed(), "{r}");
        }
        for pi in root_partitions(&a).unwrap() {
            let r = verify_quotient_structure(&engine, &pi, 6).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn labels_count_like_the_formula_per_partition() {
    let n = 8;
    for a in root_vectors_up_to(4, &[1, 2, 3]) {
        for pi in root_partitions(&a).unwrap() {
            let wide = n + 40;
            let c = c_pi(&pi, wide);
            let expected = l_pi(&pi, wide).unwrap().mul(&c.mul(&c)).truncate(n);
            let lo = expected.lo().min(-(a.height() as i64).pow(2));
            let counts = QSeries::from_coeffs(lo, n, (lo..=n).map(|k| (k, Int::from(cell_labels(&pi, k).len() as i64))));
            assert!(counts.compare(&expected).agrees(), "{pi}: {counts} vs {expected}");
        }
    }
}

#[test]
fn c_pi_lower_bound() {
    for a in root_vectors_up_to(4, &[1, 2, 3]) {
        for pi in root_partitions(&a).unwrap() {
            let longest = min_coset_reps(&pi).iter().map(|w| w.length()).max().unwrap() as i64;
            assert!(c_pi(&pi, 10).lo() >= -2 * longest + pi.sh(), "{pi}");
            let i = pi.word();
            for w in min_coset_reps(&pi) {
                assert!(crossing_degree(&w, &i) >= -2 * w.length() as i64);
            }
        }
    }
}

#[test]
fn cell_data_satisfy_their_invariants() {
    let engine = Engine::default();
    for a in root_vectors_up_to(4, &[1, 2, 3]) {
        let s = CellularStructure::new(&engine, &a).unwrap();
        for pi in s.partitions() {
            let d = CellDatum::new(&engine, pi).unwrap();
            assert_eq!(engine.tau(&d.psi_pi), d.psi_pi);
            assert_eq!(d.e_pi.homogeneous_degree(), Some(0));
        }
    }
}

#[test]
fn dimensions_agree_through_height_three() {
    for a in root_vectors_up_to(3, &[1, 2, 3]) {
        let r = dim_check(&a, 8).unwrap();
        assert!(r.agrees, "{r}");
    }
}
