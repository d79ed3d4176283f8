//! The polynomial representation `⊕_i Z[y_1..y_d] e(i)` of `R_α`, used to
//! check the rewriting engine.

use std::collections::BTreeMap;
use std::fmt;

use crate::engine::{Element, GeneratorSymbol};
use crate::error::{KlrError, Result};
use crate::int::Int;
use crate::lie::{canonical_reduced_word, RootVector, Word};
use crate::poly::{Exps, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyVector {
    alpha: RootVector,
    comps: BTreeMap<Word, Poly>,
}

impl PolyVector {
    pub fn zero(alpha: &RootVector) -> Self {
        PolyVector { alpha: alpha.clone(), comps: BTreeMap::new() }
    }

    pub fn single(i: Word, f: Poly) -> Self {
        let mut v = Self::zero(&i.content());
        v.add_to(i, &f);
        v
    }

    pub fn alpha(&self) -> &RootVector {
        &self.alpha
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn get(&self, i: &Word) -> Poly {
        self.comps.get(i).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Word, &Poly)> {
        self.comps.iter()
    }

    pub fn add_to(&mut self, i: Word, f: &Poly) {
        let slot = self.comps.entry(i).or_default();
        slot.add_assign(f);
        if slot.is_zero() {
            self.comps.remove(&i);
        }
    }

    pub fn add(&self, other: &PolyVector) -> PolyVector {
        let mut out = self.clone();
        for (i, f) in &other.comps {
            out.add_to(*i, f);
        }
        out
    }

    pub fn scale(&self, c: &Int) -> PolyVector {
        let mut out = PolyVector::zero(&self.alpha);
        for (i, f) in &self.comps {
            out.add_to(*i, &f.scale(c));
        }
        out
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.comps.iter()).finish()
    }
}

/// `(f - s_r f) / (y_{r+1} - y_r)` by long division in `y_{r+1}`.
fn divided_difference(f: &Poly, r: usize) -> Result<Poly> {
    let mut rem = f.sub(&f.swap_vars(r));
    let mut quot = Poly::zero();
    while let Some((lead, c)) = rem.terms().max_by_key(|(m, _)| (m.get(r + 1), **m)).map(|(m, c)| (*m, c.clone())) {
        let b = lead.get(r + 1);
        if b == 0 {
            return Err(KlrError::ConstructionFailed(format!(
                "divided difference of {f} by y{} - y{r} left remainder {rem}",
                r + 1
            )));
        }
        let mut q = lead;
        q.set(r + 1, b - 1);
        let step = Poly::monomial(q, c);
        quot.add_assign(&step);
        rem = rem.sub(&step.mul(&Poly::var(r + 1).sub(&Poly::var(r))));
    }
    Ok(quot)
}

/// Action of a single generator.
pub fn act_gen(g: &GeneratorSymbol, v: &PolyVector) -> Result<PolyVector> {
    g.validate(v.alpha())?;
    let mut out = PolyVector::zero(v.alpha());
    match g {
        GeneratorSymbol::Idempotent(j) => out.add_to(*j, &v.get(j)),
        GeneratorSymbol::Dot(s) => {
            for (i, f) in v.components() {
                out.add_to(*i, &f.mul_monomial(&Exps::unit(*s)));
            }
        }
        GeneratorSymbol::Crossing(r) => {
            let r = *r;
            for (i, f) in v.components() {
                let (a, b) = (i.at(r), i.at(r + 1));
                let image = if a == b {
                    divided_difference(f, r)?
                } else if a == b - 1 {
                    Poly::var(r + 1).sub(&Poly::var(r)).mul(&f.swap_vars(r))
                } else {
                    f.swap_vars(r)
                };
                out.add_to(i.swapped(r), &image);
            }
        }
    }
    Ok(out)
}

/// Action of an arbitrary element, monomial by monomial through its
/// generator expansion.
pub fn act(x: &Element, v: &PolyVector) -> Result<PolyVector> {
    if x.alpha() != v.alpha() {
        return Err(KlrError::AmbientMismatch { left: x.alpha().to_string(), right: v.alpha().to_string() });
    }
    let mut out = PolyVector::zero(v.alpha());
    for (i, w, f) in x.components() {
        let mut cur = PolyVector::single(*i, v.get(i).mul(f));
        for r in canonical_reduced_word(w).into_iter().rev() {
            cur = act_gen(&GeneratorSymbol::Crossing(r), &cur)?;
        }
        out = out.add(&cur);
    }
    Ok(out)
}

/// Action of a raw generator word, rightmost generator first.
pub fn act_word(gens: &[GeneratorSymbol], v: &PolyVector) -> Result<PolyVector> {
    let mut cur = v.clone();
    for g in gens.iter().rev() {
        cur = act_gen(g, &cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        Word::new(letters).unwrap()
    }

    #[test]
    fn crossing_on_equal_labels() {
        let v = PolyVector::single(w(&[1, 1]), Poly::var(2));
        let out = act_gen(&GeneratorSymbol::Crossing(1), &v).unwrap();
        assert_eq!(out, PolyVector::single(w(&[1, 1]), Poly::one()));
        let c = PolyVector::single(w(&[1, 1]), Poly::one());
        assert!(act_gen(&GeneratorSymbol::Crossing(1), &c).unwrap().is_zero());
    }

    #[test]
    fn crossing_squared_on_adjacent_labels() {
        let f = Poly::var(1).mul(&Poly::var(2)).add(&Poly::var(2).mul(&Poly::var(2)));
        let v = PolyVector::single(w(&[1, 2]), f.clone());
        let psi = GeneratorSymbol::Crossing(1);
        let twice = act_gen(&psi, &act_gen(&psi, &v).unwrap()).unwrap();
        let expected = Poly::var(1).sub(&Poly::var(2)).mul(&f);
        assert_eq!(twice, PolyVector::single(w(&[1, 2]), expected));
    }

    #[test]
    fn idempotent_projects() {
        let v = PolyVector::single(w(&[1, 2]), Poly::var(1));
        let out = act_gen(&GeneratorSymbol::Idempotent(w(&[2, 1])), &v).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn long_division_matches_closed_form() {
        let f = Poly::var(1).mul(&Poly::var(1)).mul(&Poly::var(3)).add(&Poly::var(2).scale(&Int::from(5)));
        for r in 1..3 {
            assert_eq!(divided_difference(&f, r).unwrap(), f.demazure(r));
        }
    }
}
