//! Truncated integer Laurent series in the grading variable `q`.
//!
//! Every series remembers its cutoff: coefficients of `q^n` for `n > cutoff`
//! are unknown, and arithmetic never claims more than the operands support.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KlrError, Result};
use crate::int::Int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeries {
    lo: i64,
    cutoff: i64,
    coeffs: BTreeMap<i64, Int>,
}

/// Outcome of comparing two series on their common known range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub lo: i64,
    pub hi: i64,
    /// `(exponent, left, right)` for every disagreeing coefficient.
    pub mismatches: Vec<(i64, Int, Int)>,
}

impl SeriesComparison {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl QSeries {
    pub fn zero(cutoff: i64) -> Self {
        QSeries { lo: 0, cutoff, coeffs: BTreeMap::new() }
    }

    pub fn one(cutoff: i64) -> Self {
        Self::monomial(Int::from(1), 0, cutoff)
    }

    /// `c * q^e`, truncated at `cutoff`.
    pub fn monomial(c: Int, e: i64, cutoff: i64) -> Self {
        Self::from_coeffs(e, cutoff, [(e, c)])
    }

    pub fn from_coeffs(lo: i64, cutoff: i64, coeffs: impl IntoIterator<Item = (i64, Int)>) -> Self {
        let mut out = QSeries { lo, cutoff, coeffs: BTreeMap::new() };
        for (e, c) in coeffs {
            out.add_term(e, &c);
        }
        out
    }

    /// Builds a series from raw integer coefficients starting at `lo`.
    pub fn from_slice(lo: i64, cutoff: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(lo, cutoff, coeffs.iter().enumerate().map(|(k, &c)| (lo + k as i64, Int::from(c))))
    }

    /// `1 / (1 - q^k) = sum_{m >= 0} q^{km}`, truncated at `cutoff`.
    pub fn inv_one_minus(k: i64, cutoff: i64) -> Result<Self> {
        if k <= 0 {
            return Err(KlrError::InvalidArgument(format!("inv_one_minus needs k >= 1, got {k}")));
        }
        let terms = (0..).map(|m| m * k).take_while(|&e| e <= cutoff).map(|e| (e, Int::from(1)));
        Ok(Self::from_coeffs(0, cutoff, terms))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`; `None` when `n` lies beyond the cutoff.
    pub fn coeff(&self, n: i64) -> Option<Int> {
        if n > self.cutoff {
            return None;
        }
        Some(self.coeffs.get(&n).cloned().unwrap_or_default())
    }

    fn add_term(&mut self, e: i64, c: &Int) {
        if e > self.cutoff || c.is_zero() {
            return;
        }
        if e < self.lo {
            self.lo = e;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = QSeries { lo: self.lo.min(other.lo), cutoff, coeffs: BTreeMap::new() };
        for (e, c) in self.terms().chain(other.terms()) {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            lo: self.lo,
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    /// Multiplies by `q^s`.
    pub fn shift(&self, s: i64) -> QSeries {
        QSeries {
            lo: self.lo + s,
            cutoff: self.cutoff + s,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + s, c.clone())).collect(),
        }
    }

    /// Cauchy product. A coefficient of the product at `n` needs the
    /// operands up to `n - lo(other)`, so the known range shrinks accordingly.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let cutoff = (self.cutoff + other.lo).min(other.cutoff + self.lo);
        let mut out = QSeries { lo: self.lo + other.lo, cutoff, coeffs: BTreeMap::new() };
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                if ea + eb > cutoff {
                    break;
                }
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    /// Drops everything above `cutoff`. Never raises the cutoff.
    pub fn truncate(&self, cutoff: i64) -> QSeries {
        let cutoff = cutoff.min(self.cutoff);
        QSeries {
            lo: self.lo,
            cutoff,
            coeffs: self.coeffs.range(..=cutoff).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    /// Compares coefficientwise on `[min lo, min cutoff]`.
    pub fn compare(&self, other: &QSeries) -> SeriesComparison {
        let lo = self.lo.min(other.lo);
        let hi = self.cutoff.min(other.cutoff);
        let mismatches = (lo..=hi)
            .filter_map(|n| {
                let (a, b) = (self.coeff(n).unwrap(), other.coeff(n).unwrap());
                (a != b).then_some((n, a, b))
            })
            .collect();
        SeriesComparison { lo, hi, mismatches }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if k == 0 {
                write!(f, "{c}*q^{e}")?;
            } else if c.is_negative() {
                write!(f, " - {}*q^{e}", c.abs())?;
            } else {
                write!(f, " + {c}*q^{e}")?;
            }
        }
        write!(f, " (mod q^{})", self.cutoff + 1)
    }
}
