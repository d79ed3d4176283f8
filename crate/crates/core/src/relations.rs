//! Every instance of the defining relations of `R_α`, as pairs of integer
//! combinations of generator words, and their check in the engine.

use std::fmt;

use rayon::prelude::*;

use crate::engine::{Element, Engine, GeneratorSymbol};
use crate::error::Result;
use crate::int::Int;
use crate::lie::{words_of, RootVector};
use crate::report::{CheckRecord, Report};

use GeneratorSymbol::{Crossing as Psi, Dot as Y, Idempotent as E};

/// `Σ c · g_1 g_2 ... g_k`.
pub type Combination = Vec<(i64, Vec<GeneratorSymbol>)>;

#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub name: &'static str,
    pub lhs: Combination,
    pub rhs: Combination,
}

fn show(c: &Combination) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter()
        .map(|(k, w)| {
            let w: Vec<String> = w.iter().map(ToString::to_string).collect();
            let w = if w.is_empty() { "1".to_string() } else { w.join(" ") };
            if *k == 1 { w } else { format!("({k}) {w}") }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, show(&self.lhs), show(&self.rhs))
    }
}

fn one(w: Vec<GeneratorSymbol>) -> Combination {
    vec![(1, w)]
}

/// All instances for `α`, over every admissible `r`, `s` and word `i`.
pub fn relation_instances(alpha: &RootVector) -> Result<Vec<RelationInstance>> {
    let words = words_of(alpha)?;
    let d = alpha.height();
    let mut out = Vec::new();
    let mut add = |name, lhs, rhs| out.push(RelationInstance { name, lhs, rhs });
    add("sum of e(i) = 1", words.iter().map(|i| (1, vec![E(*i)])).collect(), one(vec![]));
    for i in &words {
        for j in &words {
            let rhs = if i == j { one(vec![E(*i)]) } else { vec![] };
            add("e(i) e(j) = delta e(i)", one(vec![E(*i), E(*j)]), rhs);
        }
        for r in 1..=d {
            add("y_r e(i) = e(i) y_r", one(vec![Y(r), E(*i)]), one(vec![E(*i), Y(r)]));
            for s in 1..=d {
                add("y_r y_s = y_s y_r", one(vec![Y(r), Y(s), E(*i)]), one(vec![Y(s), Y(r), E(*i)]));
            }
        }
        for r in 1..d {
            let (a, b) = (i.at(r), i.at(r + 1));
            add("psi_r e(i) = e(s_r i) psi_r", one(vec![Psi(r), E(*i)]), one(vec![E(i.swapped(r)), Psi(r)]));
            for s in (1..=d).filter(|&s| s != r && s != r + 1) {
                add("psi_r y_s = y_s psi_r", one(vec![Psi(r), Y(s), E(*i)]), one(vec![Y(s), Psi(r), E(*i)]));
            }
            for s in (1..d).filter(|&s| s.abs_diff(r) > 1) {
                add("psi_r psi_s = psi_s psi_r", one(vec![Psi(r), Psi(s), E(*i)]), one(vec![Psi(s), Psi(r), E(*i)]));
            }
            let delta: Combination = if a == b { one(vec![E(*i)]) } else { vec![] };
            let mut rhs = one(vec![Y(r), Psi(r), E(*i)]);
            rhs.extend(delta.clone());
            add("psi_r y_{r+1} e(i) = (y_r psi_r + delta) e(i)", one(vec![Psi(r), Y(r + 1), E(*i)]), rhs);
            let mut rhs = one(vec![Psi(r), Y(r), E(*i)]);
            rhs.extend(delta);
            add("y_{r+1} psi_r e(i) = (psi_r y_r + delta) e(i)", one(vec![Y(r + 1), Psi(r), E(*i)]), rhs);
            let rhs = if a == b {
                vec![]
            } else if (a - b).abs() > 1 {
                one(vec![E(*i)])
            } else if a == b + 1 {
                vec![(1, vec![Y(r + 1), E(*i)]), (-1, vec![Y(r), E(*i)])]
            } else {
                vec![(1, vec![Y(r), E(*i)]), (-1, vec![Y(r + 1), E(*i)])]
            };
            add("psi_r^2 e(i)", one(vec![Psi(r), Psi(r), E(*i)]), rhs);
            if r + 2 <= d {
                let c = i.at(r + 2);
                let mut rhs = one(vec![Psi(r + 1), Psi(r), Psi(r + 1), E(*i)]);
                if c == a && a == b + 1 {
                    rhs.push((1, vec![E(*i)]));
                } else if c == a && a == b - 1 {
                    rhs.push((-1, vec![E(*i)]));
                }
                add("braid psi_r psi_{r+1} psi_r e(i)", one(vec![Psi(r), Psi(r + 1), Psi(r), E(*i)]), rhs);
            }
        }
    }
    Ok(out)
}

/// Evaluates a combination in the engine.
pub fn evaluate(engine: &Engine, alpha: &RootVector, c: &Combination) -> Result<Element> {
    let mut out = Element::zero(alpha);
    for (k, w) in c {
        out.add_scaled(&engine.word_product(w, alpha)?, &Int::from(*k));
    }
    Ok(out)
}

/// One record per relation family for `α`; a failure carries the first
/// offending instance.
pub fn verify_relations(engine: &Engine, alpha: &RootVector) -> Result<Report> {
    let instances = relation_instances(alpha)?;
    let outcomes: Vec<(&'static str, Option<String>)> = instances
        .par_iter()
        .map(|inst| {
            let l = evaluate(engine, alpha, &inst.lhs)?;
            let r = evaluate(engine, alpha, &inst.rhs)?;
            Ok((inst.name, (l != r).then(|| format!("{inst} (lhs {l}, rhs {r})"))))
        })
        .collect::<Result<_>>()?;
    let mut names: Vec<&'static str> = outcomes.iter().map(|(n, _)| *n).collect();
    names.sort_unstable();
    names.dedup();
    let mut report: Report = names
        .into_iter()
        .map(|name| {
            let bad = outcomes.iter().find(|(n, w)| *n == name && w.is_some()).and_then(|(_, w)| w.clone());
            CheckRecord::new(name, alpha, bad.is_none()).witness_if_failed(|| bad.unwrap_or_default())
        })
        .collect();
    report.sort();
    Ok(report)
}
