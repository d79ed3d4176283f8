//! Acceptance gate: every criterion runs at zero tolerance inside its time
//! budget and prints one PASS/FAIL line.

use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use klr_core::cellular::{
    verify_affine_cellularity_in, verify_cell_chain_in, verify_cellular_basis_in, verify_quotient_structure_in,
    CellularStructure,
};
use klr_core::dimension::dim_check;
use klr_core::engine::{Element, Engine, GeneratorSymbol};
use klr_core::lie::{
    bfs_word_path, commutation_equivalent, min_coset_reps, poincare, poincare_brute, root_partitions,
    root_vectors_up_to, symmetric_w0_word, words_of, young_subgroup, Permutation, RootVector,
};
use klr_core::nilhecke::verify_nil_hecke;
use klr_core::oracle::{act, act_word, PolyVector};
use klr_core::poly::{exponents_of_total, Poly};
use klr_core::qseries::QSeries;
use klr_core::relations::verify_relations;
use klr_core::report::Report;
use klr_core::Int;

type Outcome = Result<(), String>;

/// Root vectors of height 1..=max on vertices 1, 2, 3.
fn alphas(max: usize) -> Vec<RootVector> {
    root_vectors_up_to(max, &[1, 2, 3])
}

fn require(report: Report) -> Outcome {
    match report.failures().next() {
        None => Ok(()),
        Some(f) => Err(format!("{} failed checks, first: {f}", report.failures().count())),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn relations() -> Outcome {
    let engine = Engine::default();
    for a in alphas(4) {
        require(verify_relations(&engine, &a).map_err(err)?)?;
    }
    Ok(())
}

fn random_generators(rng: &mut ChaCha8Rng, alpha: &RootVector, max_len: usize) -> Vec<GeneratorSymbol> {
    let d = alpha.height();
    let mut out: Vec<GeneratorSymbol> = (0..rng.gen_range(0..max_len))
        .map(|_| {
            if d > 1 && rng.gen_bool(0.55) {
                GeneratorSymbol::Crossing(rng.gen_range(1..d))
            } else {
                GeneratorSymbol::Dot(rng.gen_range(1..=d))
            }
        })
        .collect();
    out.push(GeneratorSymbol::Idempotent(*words_of(alpha).unwrap().choose(rng).unwrap()));
    out
}

fn random_vector(rng: &mut ChaCha8Rng, alpha: &RootVector) -> PolyVector {
    let d = alpha.height();
    let mut v = PolyVector::zero(alpha);
    for i in words_of(alpha).unwrap() {
        let mut f = Poly::zero();
        for _ in 0..4 {
            let monos = exponents_of_total(d, rng.gen_range(0..=6));
            f.add_term(*monos.choose(rng).unwrap(), Int::from(rng.gen_range(-5i64..=5)));
        }
        v.add_to(i, &f);
    }
    v
}

fn random_sum(rng: &mut ChaCha8Rng, engine: &Engine, alpha: &RootVector) -> Result<Element, String> {
    let mut out = Element::zero(alpha);
    for _ in 0..rng.gen_range(1..=3) {
        let x = engine.word_product(&random_generators(rng, alpha, 4), alpha).map_err(err)?;
        out.add_scaled(&x, &Int::from(rng.gen_range(-3i64..=3)));
    }
    Ok(out)
}

fn oracle() -> Outcome {
    let engine = Engine::default();
    let pool: Vec<RootVector> = alphas(4).into_iter().filter(|a| a.height() >= 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let a = pool.choose(&mut rng).unwrap();
        // Length counts the trailing idempotent.
        let gens = random_generators(&mut rng, a, 6);
        let x = engine.word_product(&gens, a).map_err(err)?;
        let v = random_vector(&mut rng, a);
        if act(&x, &v).map_err(err)? != act_word(&gens, &v).map_err(err)? {
            return Err(format!("normal form of {gens:?} acts differently"));
        }
    }
    for _ in 0..200 {
        let a = pool.choose(&mut rng).unwrap();
        let x = random_sum(&mut rng, &engine, a)?;
        let y = random_sum(&mut rng, &engine, a)?;
        let v = random_vector(&mut rng, a);
        let xy = engine.mul(&x, &y).map_err(err)?;
        if act(&xy, &v).map_err(err)? != act(&x, &act(&y, &v).map_err(err)?).map_err(err)? {
            return Err(format!("module axiom fails for x = {x}, y = {y}"));
        }
    }
    Ok(())
}

fn nil_hecke() -> Outcome {
    let engine = Engine::default();
    for (a, n) in [(1, 8), (2, 8), (3, 8), (4, 4)] {
        require(verify_nil_hecke(&engine, a, n).map_err(err)?)?;
    }
    Ok(())
}

fn dimensions() -> Outcome {
    for a in alphas(4) {
        let r = dim_check(&a, 8).map_err(err)?;
        if !r.agrees {
            return Err(format!("{a}: disagree at {:?}", r.mismatches));
        }
    }
    // 2 alpha_1 in closed form, expanded independently of the library.
    let n = 8;
    let wide = n + 12;
    let inv = |k| QSeries::inv_one_minus(k, wide).unwrap();
    let c = QSeries::from_slice(-1, wide, &[1, 0, 1]);
    let lhs = c.mul(&c).mul(&inv(2).mul(&inv(4))).truncate(n);
    let rhs = QSeries::from_slice(-2, wide, &[1, 0, 1]).mul(&inv(2).mul(&inv(2))).truncate(n);
    let r = dim_check(&RootVector::simple(1).scale(2), n).map_err(err)?;
    for (name, s) in [("closed forms", &rhs), ("pbw", &r.pbw), ("formula", &r.formula), ("cellular", &r.cellular)] {
        if !lhs.compare(s).agrees() {
            return Err(format!("2 alpha_1: {name} differs from the closed form"));
        }
    }
    Ok(())
}

fn cells(run: impl Fn(&CellularStructure<'_>) -> klr_core::Result<Report>, max_height: usize) -> Outcome {
    let engine = Engine::default();
    for a in alphas(max_height) {
        let s = CellularStructure::new(&engine, &a).map_err(err)?;
        require(run(&s).map_err(err)?)?;
    }
    Ok(())
}

fn cell_chain() -> Outcome {
    cells(|s| verify_cell_chain_in(s, 6), 4)
}

fn cellular_basis() -> Outcome {
    cells(|s| verify_cellular_basis_in(s, 6), 4)
}

fn quotients() -> Outcome {
    cells(
        |s| {
            let mut r = verify_affine_cellularity_in(s, 6)?;
            for idx in 0..s.len() {
                r.extend(verify_quotient_structure_in(s, idx, 6)?);
            }
            Ok(r)
        },
        3,
    )
}

fn combinatorics() -> Outcome {
    for a in 1..=6usize {
        let n = 2 * (a * a) as i64;
        if !poincare(a, n).map_err(err)?.compare(&poincare_brute(a, n)).agrees() {
            return Err(format!("Poincare product differs from the count for a = {a}"));
        }
    }
    for a in root_vectors_up_to(5, &[1, 2, 3, 4]) {
        let d: usize = (1..=a.height()).product();
        for p in root_partitions(&a).map_err(err)? {
            if min_coset_reps(&p).len() * young_subgroup(&p.block_sizes()).len() != d {
                return Err(format!("{p}: |S^pi| |S_pi| != d!"));
            }
        }
    }
    for a in 1..=5 {
        let word = symmetric_w0_word(a).map_err(err)?;
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        let ok = Permutation::from_word(&word, a) == Permutation::longest(a)
            && word.len() == a * (a - 1) / 2
            && commutation_equivalent(&word, &rev)
            && bfs_word_path(&word, &rev, false).is_some();
        if !ok {
            return Err(format!("symmetric w0 word fails for a = {a}"));
        }
    }
    Ok(())
}

fn klr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klr")).args(args).output().expect("klr runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn cli() -> Outcome {
    let cases: [(&[&str], &str); 3] = [
        (&["partitions", "--alpha", "1:1,2:1"], "partitions_1-1_2-1.txt"),
        (&["dim", "--alpha", "1:2", "--cutoff", "6"], "dim_1-2_cutoff6.txt"),
        (&["verify", "--alpha", "1:1,2:1", "--suite", "all", "--cutoff", "6"], "verify_1-1_2-1_all_cutoff6.txt"),
    ];
    for (args, file) in cases {
        let out = klr(args);
        if out.status.code() != Some(0) {
            return Err(format!("{args:?} exited with {:?}", out.status.code()));
        }
        if out.stdout != golden(file).as_bytes() {
            return Err(format!("{args:?} differs from {file}"));
        }
    }
    let usage: [&[&str]; 4] = [
        &["eval", "--alpha", "1:1", "y1*("],
        &["frobnicate"],
        &["dim", "--alpha", "1:x"],
        &["verify", "--alpha", "1:1,2:1", "--suite", "nilhecke"],
    ];
    for args in usage {
        if klr(args).status.code() != Some(2) {
            return Err(format!("{args:?} should exit with 2"));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("1 relation suite", relations, 30),
        ("2 oracle equivalence", oracle, 60),
        ("3 nilHecke claims", nil_hecke, 120),
        ("4 dimension identity", dimensions, 120),
        ("5 cell chain", cell_chain, 300),
        ("6 cellular basis", cellular_basis, 180),
        ("7 quotient structure and affine cellularity", quotients, 300),
        ("8 combinatorial closed forms", combinatorics, 10),
        ("9 cli golden output and exit codes", cli, 5),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if outcome.is_ok() && took > Duration::from_secs(budget) {
            outcome = Err(format!("over the {budget} s budget"));
        }
        // Written to the raw handle so the lines survive output capture.
        let line = match &outcome {
            Ok(()) => format!("PASS criterion {name} ({:.1} s)", took.as_secs_f64()),
            Err(why) => {
                failed.push(name);
                format!("FAIL criterion {name} ({:.1} s): {why}", took.as_secs_f64())
            }
        };
        writeln!(std::io::stderr(), "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
