#![allow(dead_code)]

use klr_core::engine::{Element, Engine, GeneratorSymbol};
use klr_core::lie::{root_vectors_up_to, words_of, RootVector, Word};
use klr_core::oracle::PolyVector;
use klr_core::poly::{exponents_of_total, Poly};
use klr_core::Int;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Root vectors of height 2..=4 on vertices 1, 2, 3.
pub fn alphas() -> Vec<RootVector> {
    root_vectors_up_to(4, &[1, 2, 3]).into_iter().filter(|a| a.height() >= 2).collect()
}

pub fn random_alpha(rng: &mut TestRng) -> RootVector {
    alphas().choose(rng).unwrap().clone()
}

pub fn random_word_of(rng: &mut TestRng, alpha: &RootVector) -> Word {
    *words_of(alpha).unwrap().choose(rng).unwrap()
}

/// A generator word of length `1..=max_len` ending in an idempotent, so its
/// product is homogeneous.
pub fn random_generators(rng: &mut TestRng, alpha: &RootVector, max_len: usize) -> Vec<GeneratorSymbol> {
    let d = alpha.height();
    let len = rng.gen_range(0..max_len);
    let mut out: Vec<GeneratorSymbol> = (0..len)
        .map(|_| {
            if rng.gen_bool(0.55) {
                GeneratorSymbol::Crossing(rng.gen_range(1..d))
            } else {
                GeneratorSymbol::Dot(rng.gen_range(1..=d))
            }
        })
        .collect();
    out.push(GeneratorSymbol::Idempotent(random_word_of(rng, alpha)));
    out
}

pub fn random_element(rng: &mut TestRng, engine: &Engine, alpha: &RootVector, max_len: usize) -> Element {
    engine.word_product(&random_generators(rng, alpha, max_len), alpha).unwrap()
}

/// A sum of up to three random generator products with small coefficients.
pub fn random_sum(rng: &mut TestRng, engine: &Engine, alpha: &RootVector, max_len: usize) -> Element {
    let mut out = Element::zero(alpha);
    for _ in 0..rng.gen_range(1..=3) {
        let c = Int::from(rng.gen_range(-3i64..=3));
        out.add_scaled(&random_element(rng, engine, alpha, max_len), &c);
    }
    out
}

pub fn random_poly(rng: &mut TestRng, d: usize, max_degree: u32, terms: usize) -> Poly {
    let mut f = Poly::zero();
    for _ in 0..terms {
        let k = rng.gen_range(0..=max_degree);
        let monos = exponents_of_total(d, k);
        let m = *monos.choose(rng).unwrap();
        f.add_term(m, Int::from(rng.gen_range(-5i64..=5)));
    }
    f
}

pub fn random_vector(rng: &mut TestRng, alpha: &RootVector, max_degree: u32) -> PolyVector {
    let mut v = PolyVector::zero(alpha);
    for i in words_of(alpha).unwrap() {
        if rng.gen_bool(0.7) {
            v.add_to(i, &random_poly(rng, alpha.height(), max_degree, 4));
        }
    }
    v
}
