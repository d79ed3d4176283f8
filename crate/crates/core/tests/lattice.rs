use klr_core::zlattice::{hnf, lattice_equal, member, IntegerMatrix, Lattice};
use klr_core::Int;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn to_matrix(rows: &[Vec<i64>], cols: usize) -> IntegerMatrix {
    IntegerMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
}

/// Whether `target` is an integer combination of `rows` with coefficients
/// in `-bound..=bound`.
fn small_combination(rows: &[Vec<i64>], target: &[i64], bound: i64) -> bool {
    fn go(rows: &[Vec<i64>], rest: Vec<i64>, bound: i64) -> bool {
        match rows.split_first() {
            None => rest.iter().all(|&x| x == 0),
            Some((r, more)) => (-bound..=bound).any(|c| {
                let next: Vec<i64> = rest.iter().zip(r).map(|(x, y)| x - c * y).collect();
                go(more, next, bound)
            }),
        }
    }
    go(rows, target.to_vec(), bound)
}

proptest! {
    #[test]
    fn hnf_is_idempotent(rows in matrix(4, 5)) {
        let h = hnf(&to_matrix(&rows, 5));
        prop_assert_eq!(hnf(&h), h);
    }

    #[test]
    fn hnf_preserves_span(rows in matrix(4, 5)) {
        let m = to_matrix(&rows, 5);
        let h = hnf(&m);
        let (a, b) = (Lattice::from_matrix(&m), Lattice::from_matrix(&h));
        prop_assert!(a.contains_lattice(&b) && b.contains_lattice(&a));
        prop_assert!(lattice_equal(&a, &b));
    }

    #[test]
    fn membership_matches_search(rows in matrix(4, 4), coeffs in prop::collection::vec(-2i64..=2, 4), nudge in 0usize..5) {
        let det = det4(&rows);
        prop_assume!(det != 0);
        let mut target = vec![0i64; 4];
        for (c, r) in coeffs.iter().zip(&rows) {
            for (t, x) in target.iter_mut().zip(r) {
                *t += c * x;
            }
        }
        if nudge < 4 {
            target[nudge] += 1;
        }
        // Cramer's rule on the transposed system gives the unique rational
        // coefficients; membership means they are all integers.
        let integral = (0..4).all(|k| {
            let mut swapped = rows.clone();
            swapped[k] = target.clone();
            det4(&swapped) % det == 0
        });
        let l = Lattice::from_matrix(&to_matrix(&rows, 4));
        let v: Vec<Int> = target.iter().map(|&x| Int::from(x)).collect();
        prop_assert_eq!(member(&v, &l), integral);
        let found = small_combination(&rows, &target, 2);
        prop_assert!(!found || member(&v, &l));
        if nudge == 4 {
            prop_assert!(found && member(&v, &l));
        }
    }
}

fn det4(rows: &[Vec<i64>]) -> i128 {
    fn det(m: &[Vec<i128>]) -> i128 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| *x).collect()).collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum()
    }
    det(&rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>())
}
