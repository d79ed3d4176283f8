//! Graded dimensions of `R_α` three ways: the PBW count, `Σ_π l_π c_π²`,
//! and the number of cellular basis elements per degree.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::cellular::cell_labels;
use crate::engine::{crossing_degree, dim_q_pbw, min_degree};
use crate::error::Result;
use crate::int::Int;
use crate::lie::{min_coset_reps, root_partitions, RootPartition, RootVector};
use crate::qseries::{QSeries, SeriesComparison};

/// `c_π = q^{sh(π)} Σ_{w ∈ S^π} q^{deg ψ_w e(i_π)}`.
pub fn c_pi(pi: &RootPartition, cutoff: i64) -> QSeries {
    let i = pi.word();
    let sh = pi.sh();
    let terms: Vec<(i64, Int)> = min_coset_reps(pi).iter().map(|w| (sh + crossing_degree(w, &i), Int::from(1))).collect();
    let lo = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
    QSeries::from_coeffs(lo, cutoff, terms)
}

/// `l_p = Π_{m=1}^p 1/(1 - q^{2m})`.
pub fn l_p(p: u32, cutoff: i64) -> Result<QSeries> {
    let mut out = QSeries::one(cutoff);
    for m in 1..=p as i64 {
        out = out.mul(&QSeries::inv_one_minus(2 * m, cutoff)?);
    }
    Ok(out)
}

/// `l_π = Π_k l_{p_k}`.
pub fn l_pi(pi: &RootPartition, cutoff: i64) -> Result<QSeries> {
    let mut out = QSeries::one(cutoff);
    for &(_, p) in pi.parts() {
        out = out.mul(&l_p(p, cutoff)?);
    }
    Ok(out)
}

/// `Σ_π l_π c_π²` up to `q^cutoff`.
pub fn dim_formula(alpha: &RootVector, cutoff: i64) -> Result<QSeries> {
    let d = alpha.height() as i64;
    let inner = cutoff + 4 * d * (d - 1).max(0) + 2;
    let parts: Vec<QSeries> = root_partitions(alpha)?
        .par_iter()
        .map(|pi| {
            let c = c_pi(pi, inner);
            Ok(l_pi(pi, inner)?.mul(&c.mul(&c)))
        })
        .collect::<Result<_>>()?;
    let lo = min_degree(alpha)?;
    let total = parts.iter().fold(QSeries::from_coeffs(lo, inner, []), |acc, s| acc.add(s));
    Ok(total.truncate(cutoff))
}

/// Number of cellular basis elements in each degree up to `q^cutoff`.
pub fn dim_cellular(alpha: &RootVector, cutoff: i64) -> Result<QSeries> {
    let lo = min_degree(alpha)?;
    let pis = root_partitions(alpha)?;
    let counts: Vec<(i64, Int)> = (lo..=cutoff)
        .into_par_iter()
        .map(|n| (n, Int::from(pis.iter().map(|pi| cell_labels(pi, n).len() as i64).sum::<i64>())))
        .collect();
    Ok(QSeries::from_coeffs(lo, cutoff, counts))
}

#[derive(Clone, Debug, Serialize)]
pub struct DimReport {
    pub alpha: RootVector,
    pub cutoff: i64,
    pub pbw: QSeries,
    pub formula: QSeries,
    pub cellular: QSeries,
    pub agrees: bool,
    /// Exponents where the three series disagree.
    pub mismatches: Vec<i64>,
}

impl DimReport {
    pub fn to_json(&self) -> Value {
        let row = |s: &QSeries| -> Value {
            s.terms().map(|(e, c)| (e.to_string(), Value::String(c.to_string()))).collect::<serde_json::Map<_, _>>().into()
        };
        serde_json::json!({
            "alpha": self.alpha.to_string(),
            "cutoff": self.cutoff,
            "pbw": row(&self.pbw),
            "formula": row(&self.formula),
            "cellular": row(&self.cellular),
            "agrees": self.agrees,
            "mismatches": self.mismatches,
        })
    }
}

impl fmt::Display for DimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha={} cutoff={}", self.alpha, self.cutoff)?;
        let lo = self.pbw.lo().min(self.formula.lo()).min(self.cellular.lo());
        let cell = |s: &QSeries, n: i64| s.coeff(n).map(|c| c.to_string()).unwrap_or_else(|| "?".into());
        let rows: Vec<[String; 4]> = (lo..=self.cutoff)
            .map(|n| [n.to_string(), cell(&self.pbw, n), cell(&self.formula, n), cell(&self.cellular, n)])
            .collect();
        let header = ["degree", "pbw", "formula", "cellular"];
        let widths: Vec<usize> =
            (0..4).map(|k| rows.iter().map(|r| r[k].len()).chain([header[k].len()]).max().unwrap_or(0)).collect();
        let line = |cols: [&str; 4]| {
            cols.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
        };
        writeln!(f, "{}", line(header))?;
        for r in &rows {
            writeln!(f, "{}", line([&r[0], &r[1], &r[2], &r[3]]))?;
        }
        if self.agrees {
            write!(f, "agree")
        } else {
            let m: Vec<String> = self.mismatches.iter().map(i64::to_string).collect();
            write!(f, "DISAGREE at degrees {}", m.join(","))
        }
    }
}

pub fn dim_check(alpha: &RootVector, cutoff: i64) -> Result<DimReport> {
    let pbw = dim_q_pbw(alpha, cutoff)?;
    let formula = dim_formula(alpha, cutoff)?;
    let cellular = dim_cellular(alpha, cutoff)?;
    let mismatches = merge(&[pbw.compare(&formula), pbw.compare(&cellular)]);
    Ok(DimReport {
        alpha: alpha.clone(),
        cutoff,
        agrees: mismatches.is_empty(),
        mismatches,
        pbw,
        formula,
        cellular,
    })
}

fn merge(cs: &[SeriesComparison]) -> Vec<i64> {
    let mut out: Vec<i64> = cs.iter().flat_map(|c| c.mismatches.iter().map(|m| m.0)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> RootVector {
        RootVector::parse(s).unwrap()
    }

    fn q(lo: i64, cutoff: i64, c: &[i64]) -> QSeries {
        QSeries::from_slice(lo, cutoff, c)
    }

    #[test]
    fn c_pi_examples() {
        let pis = root_partitions(&alpha("1:1")).unwrap();
        assert!(c_pi(&pis[0], 6).compare(&QSeries::one(6)).agrees());
        let pis = root_partitions(&alpha("1:2")).unwrap();
        assert!(c_pi(&pis[0], 6).compare(&q(-1, 6, &[1, 0, 1])).agrees());
        let pis = root_partitions(&alpha("1:1,2:1")).unwrap();
        assert!(c_pi(&pis[0], 6).compare(&q(0, 6, &[1, 1])).agrees());
        assert!(c_pi(&pis[1], 6).compare(&QSeries::one(6)).agrees());
    }

    #[test]
    fn l_examples() {
        let pis = root_partitions(&alpha("1:2")).unwrap();
        assert!(l_pi(&pis[0], 4).unwrap().compare(&q(0, 4, &[1, 0, 1, 0, 2])).agrees());
        let pis = root_partitions(&alpha("1:1,2:1")).unwrap();
        let expected = QSeries::inv_one_minus(2, 8).unwrap();
        assert!(l_pi(&pis[0], 8).unwrap().compare(&expected.mul(&expected)).agrees());
    }

    #[test]
    fn two_alpha_one_closed_forms() {
        // (q + q^-1)^2 / ((1 - q^2)(1 - q^4)) against (1 + q^-2) / (1 - q^2)^2.
        let n = 8;
        let wide = n + 10;
        let inv2 = QSeries::inv_one_minus(2, wide).unwrap();
        let inv4 = QSeries::inv_one_minus(4, wide).unwrap();
        let c = q(-1, wide, &[1, 0, 1]);
        let lhs = c.mul(&c).mul(&inv2.mul(&inv4)).truncate(n);
        let rhs = q(-2, wide, &[1, 0, 1]).mul(&inv2.mul(&inv2)).truncate(n);
        assert!(lhs.compare(&rhs).agrees());
        let r = dim_check(&alpha("1:2"), n).unwrap();
        assert!(r.agrees, "{r}");
        assert!(r.formula.compare(&lhs).agrees());
        assert!(r.pbw.compare(&rhs).agrees());
    }

    #[test]
    fn small_checks_agree() {
        for a in ["1:1", "1:1,2:1", "1:3", "1:1,2:1,3:1"] {
            let r = dim_check(&alpha(a), 8).unwrap();
            assert!(r.agrees, "{r}");
            assert_eq!(r.pbw.cutoff(), 8);
            assert_eq!(r.formula.cutoff(), 8);
        }
    }

    #[test]
    fn table_renders() {
        let r = dim_check(&alpha("1:1"), 2).unwrap();
        assert_eq!(r.to_string(), "alpha=1:1 cutoff=2\ndegree  pbw  formula  cellular\n     0    1        1         1\n     1    0        0         0\n     2    1        1         1\nagree");
    }
}
