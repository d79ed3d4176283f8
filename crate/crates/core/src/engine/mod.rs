//! The algebra `R_α`: normal forms, products and the anti-involution `τ`.
//!
//! Every element is kept in the PBW shape `Σ ψ_w f(y) e(i)` with `ψ_w` built
//! from the canonical (lexicographically least) reduced word of `w` and the
//! dots to the right of the crossings.

mod element;
mod pbw;

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use lru::LruCache;
use parking_lot::Mutex;

pub use element::{crossing_degree, Element, GeneratorSymbol, NormalMonomial};
pub use pbw::{dim_q_pbw, min_degree, pbw_basis_at_degree, DegreeBasis};

use element::Comp;

use crate::error::{KlrError, Result};
use crate::int::Int;
use crate::lie::{canonical_reduced_word, path_to_canonical, path_to_leading, Permutation, RootVector, Word, WordMove};
use crate::poly::Poly;

pub const DEFAULT_CACHE_LIMIT: usize = 200_000;

type NfKey = (Vec<u8>, Word);

/// Cache counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
    pub limit: usize,
}

/// Rewriting engine with a bounded normal-form cache.
///
/// The cache sits behind a mutex and is never held across recursive calls,
/// so one engine can be shared between threads; [`Engine::fork`] gives an
/// independent cache for contention-free parallel work.
pub struct Engine {
    limit: usize,
    nf_cache: Option<Mutex<LruCache<NfKey, Arc<Comp>>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_CACHE_LIMIT)
    }
}

impl Engine {
    /// `cache_limit = 0` disables memoization.
    pub fn new(cache_limit: usize) -> Self {
        Engine {
            limit: cache_limit,
            nf_cache: NonZeroUsize::new(cache_limit).map(|n| Mutex::new(LruCache::new(n))),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// A fresh engine with the same cache limit and an empty cache.
    pub fn fork(&self) -> Self {
        Engine::new(self.limit)
    }

    pub fn cache_stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.nf_cache.as_ref().map_or(0, |c| c.lock().len()),
            limit: self.limit,
        }
    }

    /// The element of `R_α` given by a generator, e.g. `y_r = Σ_i y_r e(i)`.
    pub fn generator(&self, g: &GeneratorSymbol, alpha: &RootVector) -> Result<Element> {
        g.validate(alpha)?;
        match g {
            GeneratorSymbol::Idempotent(i) => Ok(Element::idempotent(i)),
            _ => self.left_mul_gen(g, &Element::one(alpha)?),
        }
    }

    /// `ψ_{r_1} ... ψ_{r_k} e(j)` in normal form, for any crossing word.
    pub fn psi_word(&self, word: &[usize], j: &Word) -> Result<Element> {
        let d = j.len();
        if let Some(&r) = word.iter().find(|&&r| r == 0 || r >= d) {
            return Err(KlrError::IndexOutOfRange { kind: "crossing", index: r, max: d.saturating_sub(1) });
        }
        let key: Vec<u8> = word.iter().map(|&r| r as u8).collect();
        let mut out = Element::zero(&j.content());
        out.add_comp(*j, &self.nf(&key, j), &Poly::one());
        Ok(out)
    }

    /// Product of a generator sequence, leftmost first.
    pub fn word_product(&self, gens: &[GeneratorSymbol], alpha: &RootVector) -> Result<Element> {
        let mut acc = Element::one(alpha)?;
        for g in gens.iter().rev() {
            acc = self.left_mul_gen(g, &acc)?;
        }
        Ok(acc)
    }

    pub fn left_mul_gen(&self, g: &GeneratorSymbol, x: &Element) -> Result<Element> {
        g.validate(x.alpha())?;
        let mut out = Element::zero(x.alpha());
        match *g {
            GeneratorSymbol::Idempotent(ref k) => {
                for (j, v, f) in x.components() {
                    if j.permuted(v) == *k {
                        out.add_poly(*j, *v, f);
                    }
                }
            }
            GeneratorSymbol::Dot(s) => {
                for (j, v, f) in x.components() {
                    let canon = canon_bytes(v);
                    let (end, corrections) = dot_through(s, &canon, j);
                    out.add_poly(*j, *v, &Poly::var(end).mul(f));
                    for (word, c) in corrections {
                        out.add_comp(*j, &self.nf(&word, j), &f.scale(&c));
                    }
                }
            }
            GeneratorSymbol::Crossing(r) => {
                for (j, v, f) in x.components() {
                    let mut word = vec![r as u8];
                    word.extend(canon_bytes(v));
                    out.add_comp(*j, &self.nf(&word, j), f);
                }
            }
        }
        Ok(out)
    }

    /// Normal form of `xy`, pushing the dots of `x` rightward through the
    /// crossings of `y`.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        x.ensure_same_ambient(y)?;
        let mut by_right: std::collections::BTreeMap<Word, Vec<(Permutation, &Poly)>> = Default::default();
        for (i, u, f) in x.components() {
            by_right.entry(*i).or_default().push((*u, f));
        }
        let mut out = Element::zero(x.alpha());
        for (j, v, g) in y.components() {
            let Some(left_terms) = by_right.get(&j.permuted(v)) else {
                continue;
            };
            let canon_v = canon_bytes(v);
            for (u, f) in left_terms {
                let canon_u = canon_bytes(u);
                for (sub, h) in push_poly(f, &canon_v, j) {
                    let mut word = canon_u.clone();
                    word.extend(sub);
                    out.add_comp(*j, &self.nf(&word, j), &h.mul(g));
                }
            }
        }
        Ok(out)
    }

    /// Normal form of `xy` by expanding each monomial of `x` into generators
    /// and folding [`Engine::left_mul_gen`] onto `y`.
    pub fn mul_by_generators(&self, x: &Element, y: &Element) -> Result<Element> {
        x.ensure_same_ambient(y)?;
        let mut out = Element::zero(x.alpha());
        for (t, c) in x.terms() {
            let mut acc = self.left_mul_gen(&GeneratorSymbol::Idempotent(t.i), y)?;
            for s in 1..=t.height() {
                for _ in 0..t.m.get(s) {
                    acc = self.left_mul_gen(&GeneratorSymbol::Dot(s), &acc)?;
                }
            }
            for r in canonical_reduced_word(&t.w).into_iter().rev() {
                acc = self.left_mul_gen(&GeneratorSymbol::Crossing(r), &acc)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// The anti-involution fixing every generator.
    pub fn tau(&self, x: &Element) -> Element {
        let mut out = Element::zero(x.alpha());
        for (i, w, f) in x.components() {
            // τ(ψ_w f e(i)) = f ψ_{rev w} e(w·i)
            let mut rev = canon_bytes(w);
            rev.reverse();
            let j = i.permuted(w);
            let comp = self.nf(&rev, &j);
            for (v, g) in comp.iter() {
                for (sub, h) in push_poly(f, &canon_bytes(v), &j) {
                    out.add_comp(j, &self.nf(&sub, &j), &h.mul(g));
                }
            }
        }
        out
    }

    /// Generator expansion of a monomial: crossings of the canonical word,
    /// then dots, then the idempotent.
    pub fn generator_sequence(t: &NormalMonomial) -> Vec<GeneratorSymbol> {
        let mut out: Vec<GeneratorSymbol> =
            canonical_reduced_word(&t.w).into_iter().map(GeneratorSymbol::Crossing).collect();
        for s in 1..=t.height() {
            for _ in 0..t.m.get(s) {
                out.push(GeneratorSymbol::Dot(s));
            }
        }
        out.push(GeneratorSymbol::Idempotent(t.i));
        out
    }

    /// Normal form of `ψ_word e(j)` as crossing pattern -> dot polynomial.
    fn nf(&self, word: &[u8], j: &Word) -> Arc<Comp> {
        if word.is_empty() {
            let mut comp = Comp::new();
            comp.insert(Permutation::identity(j.len()), Poly::one());
            return Arc::new(comp);
        }
        let key = (word.to_vec(), *j);
        if let Some(cache) = &self.nf_cache {
            if let Some(hit) = cache.lock().get(&key) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return Arc::clone(hit);
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let result = Arc::new(self.compute_nf(word, j));
        if let Some(cache) = &self.nf_cache {
            cache.lock().put(key, Arc::clone(&result));
        }
        result
    }

    fn compute_nf(&self, word: &[u8], j: &Word) -> Comp {
        let d = j.len();
        let r = word[0] as usize;
        let tail = &word[1..];
        let tail_perm = perm_of(tail, d);
        if tail_perm.length() == tail.len() && canon_bytes(&tail_perm) == tail {
            return self.psi_times_canon(r, &tail_perm, tail, j);
        }
        let mut out = Comp::new();
        for (u, f) in self.nf(tail, j).iter() {
            let mut w = vec![r as u8];
            w.extend(canon_bytes(u));
            add_comp_into(&mut out, &self.nf(&w, j), f);
        }
        out
    }

    /// `ψ_r ψ_{canon(u)} e(j)`.
    fn psi_times_canon(&self, r: usize, u: &Permutation, canon_u: &[u8], j: &Word) -> Comp {
        let d = j.len();
        let su = Permutation::simple(r, d).compose(u);
        let mut out = Comp::new();
        let total = canon_u.len() + 1;
        if su.length() > u.length() {
            let mut cur: Vec<usize> = std::iter::once(r).chain(canon_u.iter().map(|&x| x as usize)).collect();
            let moves = path_to_canonical(&cur).expect("prepending a non-descent keeps the word reduced");
            let corrections = walk_path(&mut cur, &moves, j);
            out.insert(su, Poly::one());
            for (word, c) in corrections {
                debug_assert!(word.len() < total, "correction did not shrink");
                add_comp_into(&mut out, &self.nf(&word, j), &Poly::constant(c));
            }
        } else {
            let mut cur: Vec<usize> = canon_u.iter().map(|&x| x as usize).collect();
            let moves = path_to_leading(&cur, r).expect("r is a left descent");
            let corrections = walk_path(&mut cur, &moves, j);
            // ψ_r ψ_r ψ_{su} e(j): the quadratic relation at the left word of ψ_{su} e(j).
            let x = j.permuted(&su);
            let (a, b) = (x.at(r), x.at(r + 1));
            let factor = if a == b {
                None
            } else if (a - b).abs() > 1 {
                Some(Poly::one())
            } else if a == b + 1 {
                Some(Poly::var(r + 1).sub(&Poly::var(r)))
            } else {
                Some(Poly::var(r).sub(&Poly::var(r + 1)))
            };
            if let Some(factor) = factor {
                for (sub, h) in push_poly(&factor, &canon_bytes(&su), j) {
                    debug_assert!(sub.len() < total);
                    add_comp_into(&mut out, &self.nf(&sub, j), &h);
                }
            }
            for (word, c) in corrections {
                let mut full = vec![r as u8];
                full.extend(word);
                debug_assert!(full.len() < total, "correction did not shrink");
                add_comp_into(&mut out, &self.nf(&full, j), &Poly::constant(c));
            }
        }
        out
    }
}

fn canon_bytes(w: &Permutation) -> Vec<u8> {
    canonical_reduced_word(w).into_iter().map(|r| r as u8).collect()
}

fn perm_of(word: &[u8], d: usize) -> Permutation {
    let letters: Vec<usize> = word.iter().map(|&r| r as usize).collect();
    Permutation::from_word(&letters, d)
}

fn add_comp_into(out: &mut Comp, comp: &Comp, factor: &Poly) {
    for (w, f) in comp {
        let slot = out.entry(*w).or_default();
        slot.add_assign(&f.mul(factor));
        if slot.is_zero() {
            out.remove(w);
        }
    }
}

/// Labels just right of each letter: `labels[k] = (s_{w_{k+1}} ... s_{w_n}) · j`.
fn labels_right_of(word: &[u8], j: &Word) -> Vec<Word> {
    let mut labels = vec![*j; word.len()];
    for k in (0..word.len().saturating_sub(1)).rev() {
        labels[k] = labels[k + 1].swapped(word[k + 1] as usize);
    }
    labels
}

/// Coefficient `c` in `ψ_r ψ_{r+1} ψ_r e(x) = (ψ_{r+1} ψ_r ψ_{r+1} + c) e(x)`.
fn braid_coefficient(r: usize, x: &Word) -> i64 {
    let (a, b, c) = (x.at(r), x.at(r + 1), x.at(r + 2));
    if a != c {
        0
    } else if a == b + 1 {
        1
    } else if a == b - 1 {
        -1
    } else {
        0
    }
}

/// Applies the moves to `cur` and returns the error terms: the word spelled
/// at the start equals the one at the end plus `Σ c · ψ_word e(j)`.
fn walk_path(cur: &mut [usize], moves: &[WordMove], j: &Word) -> Vec<(Vec<u8>, i64)> {
    let d = j.len();
    let mut out = Vec::new();
    for mv in moves {
        if let WordMove::Braid(p) = *mv {
            let (a, b) = (cur[p], cur[p + 1]);
            let rmin = a.min(b);
            let x = j.permuted(&Permutation::from_word(&cur[p + 3..], d));
            let c = braid_coefficient(rmin, &x);
            if c != 0 {
                let sign = if a == rmin { 1 } else { -1 };
                let word: Vec<u8> = cur[..p].iter().chain(&cur[p + 3..]).map(|&r| r as u8).collect();
                out.push((word, sign * c));
            }
        }
        mv.apply(cur);
    }
    out
}

/// Moves a polynomial from the left of `ψ_word e(j)` to the right:
/// `f ψ_r e(x) = ψ_r (s_r f) e(x) + δ_{x_r, x_{r+1}} ∂_r(f) e(x)`.
/// Returns the surviving subwords with their right-hand polynomials.
fn push_poly(f: &Poly, word: &[u8], j: &Word) -> Vec<(Vec<u8>, Poly)> {
    let labels = labels_right_of(word, j);
    let mut states: std::collections::BTreeMap<Vec<u8>, Poly> = std::collections::BTreeMap::new();
    states.insert(Vec::new(), f.clone());
    for (k, &r) in word.iter().enumerate() {
        let r = r as usize;
        let x = &labels[k];
        let equal = x.at(r) == x.at(r + 1);
        let mut next: std::collections::BTreeMap<Vec<u8>, Poly> = std::collections::BTreeMap::new();
        for (kept, p) in states {
            if equal {
                let dp = p.demazure(r);
                if !dp.is_zero() {
                    next.entry(kept.clone()).or_default().add_assign(&dp);
                }
            }
            let mut longer = kept;
            longer.push(r as u8);
            next.entry(longer).or_default().add_assign(&p.swap_vars(r));
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    states.into_iter().collect()
}

/// Moves a single dot `y_s` rightward through `ψ_word e(j)` one crossing at a
/// time. Returns the final dot index and the words with one crossing removed
/// that appear as error terms.
fn dot_through(s: usize, word: &[u8], j: &Word) -> (usize, Vec<(Vec<u8>, Int)>) {
    let labels = labels_right_of(word, j);
    let mut s = s;
    let mut corrections = Vec::new();
    for (k, &r) in word.iter().enumerate() {
        let r = r as usize;
        let x = &labels[k];
        let same = x.at(r) == x.at(r + 1);
        let sign = if s == r + 1 {
            s = r;
            1
        } else if s == r {
            s = r + 1;
            -1
        } else {
            continue;
        };
        if same {
            let dropped: Vec<u8> = word[..k].iter().chain(&word[k + 1..]).copied().collect();
            corrections.push((dropped, Int::from(sign)));
        }
    }
    (s, corrections)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        Word::new(letters).unwrap()
    }

    fn psi(word: &[usize], j: &[i32]) -> Element {
        Engine::default().psi_word(word, &w(j)).unwrap()
    }

    #[test]
    fn quadratic_relation_cases() {
        let e = Engine::default();
        let x = psi(&[1], &[1, 2]);
        let sq = e.left_mul_gen(&GeneratorSymbol::Crossing(1), &x).unwrap();
        assert_eq!(sq.to_string(), "-1 * y^[0,1] * e(1,2) + 1 * y^[1,0] * e(1,2)");
        assert!(psi(&[1, 1], &[1, 1]).is_zero());
        assert_eq!(psi(&[1, 1], &[1, 3]).to_string(), "1 * e(1,3)");
        assert_eq!(psi(&[1, 1], &[2, 1]).to_string(), "1 * y^[0,1] * e(2,1) - 1 * y^[1,0] * e(2,1)");
    }

    #[test]
    fn idempotent_kills_wrong_side() {
        let e = Engine::default();
        let x = psi(&[1], &[1, 2]);
        let out = e.left_mul_gen(&GeneratorSymbol::Idempotent(w(&[1, 2])), &x).unwrap();
        assert!(out.is_zero());
        let kept = e.left_mul_gen(&GeneratorSymbol::Idempotent(w(&[2, 1])), &x).unwrap();
        assert_eq!(kept, x);
    }

    #[test]
    fn braid_correction() {
        let lhs = psi(&[1, 2, 1], &[2, 1, 2]);
        let rhs = psi(&[2, 1, 2], &[2, 1, 2]);
        let diff = lhs.sub(&rhs).unwrap();
        assert_eq!(diff, Element::idempotent(&w(&[2, 1, 2])));
        let diff = psi(&[1, 2, 1], &[1, 2, 1]).sub(&psi(&[2, 1, 2], &[1, 2, 1])).unwrap();
        assert_eq!(diff, Element::idempotent(&w(&[1, 2, 1])).neg());
    }

    #[test]
    fn nil_hecke_idempotent() {
        let e = Engine::default();
        let alpha = RootVector::parse("1:2").unwrap();
        let i = w(&[1, 1]);
        let t = NormalMonomial::new(Permutation::simple(1, 2), &[0, 1], i).unwrap();
        let x = Element::monomial(&t, Int::from(1));
        assert_eq!(e.mul(&x, &x).unwrap(), x);
        assert_eq!(e.mul_by_generators(&x, &x).unwrap(), x);
        let one = Element::one(&alpha).unwrap();
        assert_eq!(e.mul(&one, &x).unwrap(), x);
    }

    #[test]
    fn degrees() {
        let i12 = w(&[1, 2]);
        let t = NormalMonomial::new(Permutation::identity(2), &[1, 0], i12).unwrap();
        assert_eq!(t.degree(), 2);
        let t = NormalMonomial::new(Permutation::simple(1, 2), &[0, 0], w(&[1, 1])).unwrap();
        assert_eq!(t.degree(), -2);
        let t = NormalMonomial::new(Permutation::simple(1, 2), &[0, 0], w(&[1, 3])).unwrap();
        assert_eq!(t.degree(), 0);
    }

    #[test]
    fn tau_reverses() {
        let e = Engine::default();
        let x = psi(&[1, 2], &[1, 2, 3]);
        let tx = e.tau(&x);
        // e(123) ψ_2 ψ_1 = ψ_2 ψ_1 e(312)
        let expected = psi(&[2, 1], &[3, 1, 2]);
        assert_eq!(tx, expected);
        assert_eq!(e.tau(&tx), x);
    }

    #[test]
    fn bad_indices() {
        let e = Engine::default();
        let x = Element::idempotent(&w(&[1, 2]));
        assert!(e.left_mul_gen(&GeneratorSymbol::Crossing(2), &x).is_err());
        assert!(e.left_mul_gen(&GeneratorSymbol::Dot(3), &x).is_err());
        assert!(e.left_mul_gen(&GeneratorSymbol::Idempotent(w(&[1, 1])), &x).is_err());
    }
}
