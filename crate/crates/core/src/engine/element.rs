use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{KlrError, Result};
use crate::int::Int;
use crate::lie::{canonical_reduced_word, cartan, words_of, Permutation, RootVector, Word};
use crate::poly::{Exps, Poly};

/// A PBW monomial `ψ_w y^m e(i)`; `i` is the right-hand word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NormalMonomial {
    pub w: Permutation,
    pub m: Exps,
    pub i: Word,
}

impl NormalMonomial {
    pub fn new(w: Permutation, m: &[u32], i: Word) -> Result<Self> {
        if w.len() != i.len() || m.len() != i.len() {
            return Err(KlrError::InvalidArgument(format!(
                "monomial parts disagree on strand count: w has {}, m has {}, i has {}",
                w.len(),
                m.len(),
                i.len()
            )));
        }
        Ok(NormalMonomial { w, m: Exps::from_slice(m), i })
    }

    pub fn idempotent(i: Word) -> Self {
        NormalMonomial { w: Permutation::identity(i.len()), m: Exps::zero(), i }
    }

    pub fn height(&self) -> usize {
        self.i.len()
    }

    /// The word on the left end, `w · i`.
    pub fn left_word(&self) -> Word {
        self.i.permuted(&self.w)
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.m.to_vec(self.height())
    }

    pub fn degree(&self) -> i64 {
        2 * self.m.total() as i64 + crossing_degree(&self.w, &self.i)
    }

    fn render_body(&self) -> String {
        let mut parts = Vec::new();
        if !self.w.is_identity() {
            parts.push(format!("psi[{}]", join(&canonical_reduced_word(&self.w))));
        }
        if self.m.total() > 0 {
            parts.push(format!("y^[{}]", join(&self.exponents())));
        }
        parts.push(format!("e({})", join(self.i.letters())));
        parts.join(" * ")
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_body())
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Degree of `ψ_w e(i)`, read off the inversions of `w`.
pub fn crossing_degree(w: &Permutation, i: &Word) -> i64 {
    let letters = i.letters();
    -w.inversions().map(|(k, l)| cartan(letters[k], letters[l]) as i64).sum::<i64>()
}

/// The generators `e(i)`, `y_r`, `ψ_r` (indices 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorSymbol {
    Idempotent(Word),
    Dot(usize),
    Crossing(usize),
}

impl GeneratorSymbol {
    pub fn validate(&self, alpha: &RootVector) -> Result<()> {
        let d = alpha.height();
        match self {
            GeneratorSymbol::Idempotent(i) if i.content() != *alpha => {
                Err(KlrError::ContentMismatch { word: i.to_string(), alpha: alpha.to_string() })
            }
            GeneratorSymbol::Dot(r) if *r == 0 || *r > d => {
                Err(KlrError::IndexOutOfRange { kind: "dot", index: *r, max: d })
            }
            GeneratorSymbol::Crossing(r) if *r == 0 || *r >= d => {
                Err(KlrError::IndexOutOfRange { kind: "crossing", index: *r, max: d.saturating_sub(1) })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSymbol::Idempotent(i) => write!(f, "e{i}"),
            GeneratorSymbol::Dot(r) => write!(f, "y{r}"),
            GeneratorSymbol::Crossing(r) => write!(f, "psi{r}"),
        }
    }
}

/// The dot polynomials attached to each crossing pattern for one right word.
pub(crate) type Comp = BTreeMap<Permutation, Poly>;

/// An element of `R_α`, stored as `Σ ψ_w f_{w,i}(y) e(i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    alpha: RootVector,
    comps: BTreeMap<(Word, Permutation), Poly>,
}

impl Element {
    pub fn zero(alpha: &RootVector) -> Self {
        Element { alpha: alpha.clone(), comps: BTreeMap::new() }
    }

    /// `1 = Σ_i e(i)`.
    pub fn one(alpha: &RootVector) -> Result<Self> {
        let mut out = Self::zero(alpha);
        for i in words_of(alpha)? {
            out.add_poly(i, Permutation::identity(i.len()), &Poly::one());
        }
        Ok(out)
    }

    pub fn idempotent(i: &Word) -> Self {
        Self::monomial(&NormalMonomial::idempotent(*i), Int::from(1))
    }

    pub fn monomial(t: &NormalMonomial, c: Int) -> Self {
        let mut out = Self::zero(&t.i.content());
        out.add_poly(t.i, t.w, &Poly::monomial(t.m, c));
        out
    }

    /// `ψ_w f e(i)`.
    pub fn from_parts(i: Word, w: Permutation, f: Poly) -> Self {
        let mut out = Self::zero(&i.content());
        out.add_poly(i, w, &f);
        out
    }

    pub fn from_terms(alpha: &RootVector, terms: impl IntoIterator<Item = (NormalMonomial, Int)>) -> Result<Self> {
        let mut out = Self::zero(alpha);
        for (t, c) in terms {
            if t.i.content() != *alpha {
                return Err(KlrError::ContentMismatch { word: t.i.to_string(), alpha: alpha.to_string() });
            }
            out.add_poly(t.i, t.w, &Poly::monomial(t.m, c));
        }
        Ok(out)
    }

    pub fn alpha(&self) -> &RootVector {
        &self.alpha
    }

    pub fn height(&self) -> usize {
        self.alpha.height()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub(crate) fn add_poly(&mut self, i: Word, w: Permutation, f: &Poly) {
        if f.is_zero() {
            return;
        }
        let slot = self.comps.entry((i, w)).or_default();
        slot.add_assign(f);
        if slot.is_zero() {
            self.comps.remove(&(i, w));
        }
    }

    pub(crate) fn add_comp(&mut self, j: Word, comp: &Comp, factor: &Poly) {
        for (w, f) in comp {
            self.add_poly(j, *w, &f.mul(factor));
        }
    }

    /// `(right word, w) -> dot polynomial`.
    pub fn components(&self) -> impl Iterator<Item = (&Word, &Permutation, &Poly)> {
        self.comps.iter().map(|((i, w), f)| (i, w, f))
    }

    pub fn terms(&self) -> impl Iterator<Item = (NormalMonomial, &Int)> {
        self.comps.iter().flat_map(|((i, w), f)| f.terms().map(move |(m, c)| (NormalMonomial { w: *w, m: *m, i: *i }, c)))
    }

    pub fn num_terms(&self) -> usize {
        self.comps.values().map(|f| f.len()).sum()
    }

    pub fn coeff(&self, t: &NormalMonomial) -> Int {
        self.comps.get(&(t.i, t.w)).map(|f| f.coeff(&t.m)).unwrap_or_default()
    }

    pub fn ensure_same_ambient(&self, other: &Element) -> Result<()> {
        if self.alpha != other.alpha {
            return Err(KlrError::AmbientMismatch { left: self.alpha.to_string(), right: other.alpha.to_string() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.ensure_same_ambient(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    /// Adds in place; the caller guarantees matching ambients.
    pub fn add_assign(&mut self, other: &Element) {
        debug_assert_eq!(self.alpha, other.alpha);
        for ((i, w), f) in &other.comps {
            self.add_poly(*i, *w, f);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Int) {
        debug_assert_eq!(self.alpha, other.alpha);
        for ((i, w), f) in &other.comps {
            self.add_poly(*i, *w, &f.scale(c));
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(&Int::from(-1))
    }

    pub fn scale(&self, c: &Int) -> Element {
        let mut out = Element::zero(&self.alpha);
        out.add_scaled(self, c);
        out
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms().map(|(t, _)| t.degree()).collect()
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let degs = self.degrees();
        (degs.len() == 1).then(|| *degs.iter().next().unwrap())
    }

    pub fn homogeneous_components(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (t, c) in self.terms() {
            out.entry(t.degree()).or_insert_with(|| Element::zero(&self.alpha)).add_poly(t.i, t.w, &Poly::monomial(t.m, c.clone()));
        }
        out
    }

    /// Terms in canonical display order: degree, then `w` in one-line
    /// notation, then exponents, then the word.
    pub fn sorted_terms(&self) -> Vec<(NormalMonomial, Int)> {
        let d = self.height();
        let mut terms: Vec<(NormalMonomial, Int)> = self.terms().map(|(t, c)| (t, c.clone())).collect();
        terms.sort_by_cached_key(|(t, _)| (t.degree(), t.w.one_line(), t.m.to_vec(d), t.i));
        terms
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(t, c)| {
                json!({
                    "coeff": c,
                    "psi": canonical_reduced_word(&t.w),
                    "w": t.w.one_line(),
                    "y": t.exponents(),
                    "e": t.i.letters(),
                    "degree": t.degree(),
                })
            })
            .collect();
        json!({ "alpha": self.alpha.to_string(), "terms": terms })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in terms.iter().enumerate() {
            let body = t.render_body();
            match (k, c.is_negative()) {
                (0, _) => write!(f, "{c} * {body}")?,
                (_, true) => write!(f, " - {} * {body}", c.abs())?,
                (_, false) => write!(f, " + {c} * {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({self})", self.alpha)
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
