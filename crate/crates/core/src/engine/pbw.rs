use std::collections::HashMap;

use crate::error::{KlrError, Result};
use crate::int::Int;
use crate::zlattice::{Lattice, SparseVec};
use crate::lie::{words_of, Permutation, RootVector};
use crate::poly::exponents_of_total;
use crate::qseries::QSeries;

use super::element::{crossing_degree, Element, NormalMonomial};

/// Every PBW monomial of `R_α` of degree exactly `n`.
pub fn pbw_basis_at_degree(alpha: &RootVector, n: i64) -> Result<Vec<NormalMonomial>> {
    let d = alpha.height();
    let perms = Permutation::all(d);
    let mut out = Vec::new();
    for i in words_of(alpha)? {
        for w in &perms {
            let rest = n - crossing_degree(w, &i);
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            for m in exponents_of_total(d, (rest / 2) as u32) {
                out.push(NormalMonomial { w: *w, m, i });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Coordinates of degree-`n` elements against the PBW basis.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    alpha: RootVector,
    degree: i64,
    monomials: Vec<NormalMonomial>,
    index: HashMap<NormalMonomial, usize>,
}

impl DegreeBasis {
    pub fn new(alpha: &RootVector, n: i64) -> Result<Self> {
        let monomials = pbw_basis_at_degree(alpha, n)?;
        let index = monomials.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        Ok(DegreeBasis { alpha: alpha.clone(), degree: n, monomials, index })
    }

    pub fn alpha(&self) -> &RootVector {
        &self.alpha
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[NormalMonomial] {
        &self.monomials
    }

    /// Fails if `x` has a term of another degree.
    pub fn coords(&self, x: &Element) -> Result<SparseVec> {
        x.ensure_same_ambient(&Element::zero(&self.alpha))?;
        let mut pairs = Vec::with_capacity(x.num_terms());
        for (t, c) in x.terms() {
            let Some(&k) = self.index.get(&t) else {
                return Err(KlrError::InvalidArgument(format!(
                    "term {t} has degree {}, expected {}",
                    t.degree(),
                    self.degree
                )));
            };
            pairs.push((k, c.clone()));
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn element(&self, v: &SparseVec) -> Element {
        let mut out = Element::zero(&self.alpha);
        for (k, c) in v.entries() {
            out.add_assign(&Element::monomial(&self.monomials[k], c.clone()));
        }
        out
    }

    pub fn lattice<'a>(&self, xs: impl IntoIterator<Item = &'a Element>) -> Result<Lattice> {
        let mut l = Lattice::new(self.dim());
        for x in xs {
            l.insert(self.coords(x)?);
        }
        Ok(l)
    }
}

/// Lowest degree of a nonzero element of `R_α`.
pub fn min_degree(alpha: &RootVector) -> Result<i64> {
    let perms = Permutation::all(alpha.height());
    let mut lo = 0;
    for i in words_of(alpha)? {
        for w in &perms {
            lo = lo.min(crossing_degree(w, &i));
        }
    }
    Ok(lo)
}

/// `Σ_{i,w} q^{deg ψ_w e(i)} / (1 - q^2)^d`, known up to `q^cutoff`.
pub fn dim_q_pbw(alpha: &RootVector, cutoff: i64) -> Result<QSeries> {
    let d = alpha.height() as i64;
    let perms = Permutation::all(alpha.height());
    let mut base = std::collections::BTreeMap::<i64, i64>::new();
    for i in words_of(alpha)? {
        for w in &perms {
            *base.entry(crossing_degree(w, &i)).or_insert(0) += 1;
        }
    }
    // Monomials of total degree k in d variables: C(k + d - 1, d - 1).
    let dots = |k: i64| -> Int {
        if d == 0 {
            return Int::from(if k == 0 { 1 } else { 0 });
        }
        let mut c = Int::from(1);
        for t in 1..d {
            c = (c * Int::from(k + t)).div_exact(&Int::from(t));
        }
        c
    };
    let lo = base.keys().next().copied().unwrap_or(0);
    let mut terms = Vec::new();
    for (&b, &count) in &base {
        let mut k = 0;
        while b + 2 * k <= cutoff {
            terms.push((b + 2 * k, dots(k) * Int::from(count)));
            k += 1;
        }
    }
    Ok(QSeries::from_coeffs(lo.min(cutoff), cutoff, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Word;

    fn alpha(s: &str) -> RootVector {
        RootVector::parse(s).unwrap()
    }

    #[test]
    fn basis_examples() {
        let a1 = alpha("1:1");
        let b = pbw_basis_at_degree(&a1, 0).unwrap();
        assert_eq!(b, vec![NormalMonomial::idempotent(Word::new(&[1]).unwrap())]);
        let b = pbw_basis_at_degree(&a1, 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].exponents(), vec![1]);
        let b = pbw_basis_at_degree(&alpha("1:2"), -2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].w, Permutation::simple(1, 2));
    }

    #[test]
    fn series_examples() {
        let n = 12;
        let geo = QSeries::inv_one_minus(2, n).unwrap();
        assert!(dim_q_pbw(&alpha("1:1"), n).unwrap().compare(&geo).agrees());

        let geo2 = geo.mul(&geo);
        let expected = QSeries::from_coeffs(-2, n, [(-2, Int::from(1)), (0, Int::from(1))]).mul(&geo2);
        let got = dim_q_pbw(&alpha("1:2"), n).unwrap();
        let cmp = got.compare(&expected);
        assert!(cmp.agrees(), "{cmp:?}");

        // Both crossings ψ_1 e(12) and ψ_1 e(21) have degree -a_{12} = 1.
        let expected = QSeries::from_slice(0, n, &[2, 2]).mul(&geo2);
        assert!(dim_q_pbw(&alpha("1:1,2:1"), n).unwrap().compare(&expected).agrees());
    }

    #[test]
    fn coordinates_round_trip() {
        let a = alpha("1:2,2:1");
        let b = DegreeBasis::new(&a, 0).unwrap();
        for t in b.monomials() {
            let x = Element::monomial(t, Int::from(3));
            let v = b.coords(&x).unwrap();
            assert_eq!(b.element(&v), x);
        }
        let y = Element::monomial(&NormalMonomial::idempotent(Word::new(&[1, 1, 2]).unwrap()), Int::from(1));
        assert!(DegreeBasis::new(&a, 2).unwrap().coords(&y).is_err());
        assert_eq!(min_degree(&alpha("1:2")).unwrap(), -2);
        assert_eq!(min_degree(&alpha("1:1,2:1")).unwrap(), 0);
    }

    #[test]
    fn series_counts_basis() {
        for a in ["1:1,2:1", "1:2,2:1", "1:1,2:1,3:1"] {
            let a = alpha(a);
            let series = dim_q_pbw(&a, 8).unwrap();
            for n in -6..=8 {
                let count = pbw_basis_at_degree(&a, n).unwrap().len();
                assert_eq!(series.coeff(n).unwrap(), Int::from(count as i64), "{a} degree {n}");
            }
        }
    }
}
