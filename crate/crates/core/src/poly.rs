//! Sparse integer polynomials in the dot variables `y_1, ..., y_d`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::int::Int;
use crate::MAX_STRANDS;

/// Exponent vector of a monomial `y_1^{m_1} ... y_d^{m_d}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exps([u8; MAX_STRANDS]);

impl Exps {
    pub fn zero() -> Self {
        Exps([0; MAX_STRANDS])
    }

    pub fn from_slice(m: &[u32]) -> Self {
        assert!(m.len() <= MAX_STRANDS, "too many dot variables");
        let mut out = [0; MAX_STRANDS];
        for (slot, &e) in out.iter_mut().zip(m) {
            *slot = u8::try_from(e).expect("dot exponent overflow");
        }
        Exps(out)
    }

    /// `y_r` for 1-based `r`.
    pub fn unit(r: usize) -> Self {
        let mut out = Self::zero();
        out.0[r - 1] = 1;
        out
    }

    /// Exponent of `y_r`, 1-based.
    pub fn get(&self, r: usize) -> u32 {
        self.0[r - 1] as u32
    }

    pub fn set(&mut self, r: usize, e: u32) {
        self.0[r - 1] = u8::try_from(e).expect("dot exponent overflow");
    }

    /// First `d` exponents.
    pub fn to_vec(&self, d: usize) -> Vec<u32> {
        self.0[..d].iter().map(|&e| e as u32).collect()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn add(&self, other: &Exps) -> Exps {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a = a.checked_add(b).expect("dot exponent overflow");
        }
        out
    }

    /// Swaps the exponents of `y_r` and `y_{r+1}`.
    pub fn swapped(&self, r: usize) -> Exps {
        let mut out = *self;
        out.0.swap(r - 1, r);
        out
    }

    /// Applies a strand permutation: the exponent at position `k` moves to `w(k)`.
    pub fn permuted(&self, images: &[u8]) -> Exps {
        let mut out = Exps::zero();
        for (k, &v) in images.iter().enumerate() {
            out.0[v as usize] = self.0[k];
        }
        out
    }

    /// Whether `self` divides `other` as monomials.
    pub fn divides(&self, other: &Exps) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }
}

impl fmt::Debug for Exps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All exponent vectors in `d` variables of total degree `k`.
pub fn exponents_of_total(d: usize, k: u32) -> Vec<Exps> {
    fn go(d: usize, pos: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if pos + 1 == d {
            cur.0[pos] = left as u8;
            out.push(*cur);
            return;
        }
        for e in (0..=left).rev() {
            cur.0[pos] = e as u8;
            go(d, pos + 1, left - e, cur, out);
        }
        cur.0[pos] = 0;
    }
    let mut out = Vec::new();
    if d == 0 {
        if k == 0 {
            out.push(Exps::zero());
        }
        return out;
    }
    go(d, 0, k, &mut Exps::zero(), &mut out);
    out
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Exps, Int>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Exps::zero(), Int::from(1))
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        Self::monomial(Exps::zero(), c.into())
    }

    pub fn monomial(m: Exps, c: Int) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// `y_r`, 1-based.
    pub fn var(r: usize) -> Self {
        Self::monomial(Exps::unit(r), Int::from(1))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exps, Int)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Exps) -> Int {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Exps, c: Int) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Int) {
        for (m, a) in &other.terms {
            self.add_term(*m, a * c);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, a) in &other.terms {
            self.add_term(*m, a.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &Int::from(-1));
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Exps) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.add(m), c.clone())).collect() }
    }

    /// `s_r f`: exchanges `y_r` and `y_{r+1}`.
    pub fn swap_vars(&self, r: usize) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.swapped(r), c.clone())).collect() }
    }

    /// Renames `y_k` to `y_{w(k)}`.
    pub fn permute_vars(&self, images: &[u8]) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.permuted(images), c.clone())).collect() }
    }

    /// Demazure operator `(f - s_r f) / (y_{r+1} - y_r)`, by the closed form
    /// on each monomial.
    pub fn demazure(&self, r: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (a, b) = (m.get(r), m.get(r + 1));
            if a == b {
                continue;
            }
            let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
            let c = c * &Int::from(sign);
            let mut base = *m;
            for k in 0..hi - lo {
                base.set(r, lo + k);
                base.set(r + 1, hi - 1 - k);
                out.add_term(base, c.clone());
            }
        }
        out
    }

    /// Total degree of the highest monomial; `None` for zero.
    pub fn max_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total()).max()
    }

    /// Largest variable index actually present.
    pub fn max_var(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| (1..=MAX_STRANDS).rev().find(|&r| m.get(r) > 0))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let d = self.max_var().max(1);
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = (1..=d)
                .filter(|&r| m.get(r) > 0)
                .map(|r| if m.get(r) == 1 { format!("y{r}") } else { format!("y{r}^{}", m.get(r)) })
                .collect();
            let body = if mono.is_empty() { c.abs().to_string() } else { format!("{}*{}", c.abs(), mono.join("*")) };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.max_var();
        let terms: Vec<(Vec<u32>, &Int)> = self.terms.iter().map(|(m, c)| (m.to_vec(d), c)).collect();
        terms.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(r: usize) -> Poly {
        Poly::var(r)
    }

    #[test]
    fn demazure_basics() {
        assert_eq!(y(2).demazure(1), Poly::one());
        assert_eq!(y(1).demazure(1), Poly::constant(-1));
        assert!(Poly::one().demazure(1).is_zero());
        // y_2^2 -> y_1 + y_2
        assert_eq!(y(2).mul(&y(2)).demazure(1), y(1).add(&y(2)));
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponents_of_total(3, 2).len(), 6);
        assert_eq!(exponents_of_total(1, 4), vec![Exps::from_slice(&[4])]);
        assert_eq!(exponents_of_total(0, 0).len(), 1);
    }

    #[test]
    fn display() {
        let p = y(1).mul(&y(1)).sub(&y(2).scale(&Int::from(3))).add(&Poly::constant(2));
        assert_eq!(p.to_string(), "2 - 3*y2 + 1*y1^2");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..5), 0..5).prop_map(|ts| {
            Poly::from_terms(ts.into_iter().map(|(m, c)| (Exps::from_slice(&m), Int::from(c))))
        })
    }

    proptest! {
        #[test]
        fn demazure_is_exact_quotient(f in arb_poly(), r in 1usize..3) {
            let lhs = f.demazure(r).mul(&y(r + 1).sub(&y(r)));
            prop_assert_eq!(lhs, f.sub(&f.swap_vars(r)));
        }

        #[test]
        fn twisted_leibniz(f in arb_poly(), g in arb_poly(), r in 1usize..3) {
            let lhs = f.mul(&g).demazure(r);
            let rhs = f.demazure(r).mul(&g.swap_vars(r)).add(&f.mul(&g.demazure(r)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
