//! Block crossings, the elements `y_π`, `ψ_π`, `e_π`, the cell spanning
//! sets `I'_π` and per-degree lattice checks of the ideal chain they form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::Mutex;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{crossing_degree, min_degree, DegreeBasis, Element, Engine, NormalMonomial};
use crate::error::{KlrError, Result};
use crate::int::Int;
use crate::lie::{
    min_coset_reps, root_partitions, symmetric_w0_word, words_of, young_subgroup, Permutation, RootPartition,
    RootVector, Word,
};
use crate::nilhecke::{monomial_symmetric, partitions};
use crate::poly::{exponents_of_total, Exps, Poly};
use crate::report::{CheckRecord, Report};
use crate::zlattice::{lattice_equal, IntegerMatrix, Lattice, SparseVec};

/// `ψ_{r_1} ... ψ_{r_k}` permuting two adjacent blocks of `h` strands:
/// `(ψ_h ... ψ_{2h-1}) ... (ψ_2 ... ψ_{h+1})(ψ_1 ... ψ_h)`.
pub fn block_crossing_word(h: usize) -> Vec<usize> {
    (1..=h).rev().flat_map(|k| k..k + h).collect()
}

/// `ψ_α ∈ R_{2α}`.
pub fn psi_alpha(engine: &Engine, alpha: &RootVector) -> Result<Element> {
    let h = alpha.height();
    if h == 0 {
        return Err(KlrError::InvalidArgument("psi_alpha needs a nonzero root vector".into()));
    }
    let big = alpha.scale(2);
    let word = block_crossing_word(h);
    let mut out = Element::zero(&big);
    for j in words_of(&big)? {
        out.add_assign(&engine.psi_word(&word, &j)?);
    }
    Ok(out)
}

fn shifted_perm(w: &Permutation, offset: usize, d: usize) -> Permutation {
    let mut one_line: Vec<usize> = (1..=d).collect();
    for (k, v) in w.one_line().into_iter().enumerate() {
        one_line[offset + k] = offset + v;
    }
    Permutation::from_one_line(&one_line).expect("shifted permutation")
}

fn shifted_exps(m: &Exps, offset: usize, h: usize) -> Exps {
    let mut out = Exps::zero();
    for s in 1..=h {
        out.set(offset + s, m.get(s));
    }
    out
}

/// The parabolic embedding `R_{α^1} ⊗ ... ⊗ R_{α^l} -> R_α`, evaluated on
/// a pure tensor.
pub fn iota(engine: &Engine, parts: &[(RootVector, Element)]) -> Result<Element> {
    let alpha = parts.iter().fold(RootVector::zero(), |acc, (a, _)| acc.add(a));
    let d = alpha.height();
    let words: Vec<Vec<Word>> = parts.iter().map(|(a, _)| words_of(a)).collect::<Result<_>>()?;
    let mut acc = Element::one(&alpha)?;
    let mut offset = 0;
    for (k, (a, x)) in parts.iter().enumerate() {
        if x.alpha() != a {
            return Err(KlrError::AmbientMismatch { left: a.to_string(), right: x.alpha().to_string() });
        }
        let h = a.height();
        let mut image = Element::zero(&alpha);
        for (i, w, f) in x.components() {
            let perm = shifted_perm(w, offset, d);
            let poly = Poly::from_terms(f.terms().map(|(m, c)| (shifted_exps(m, offset, h), c.clone())));
            let mut prefixes = vec![Vec::new()];
            for (l, ws) in words.iter().enumerate() {
                let choices: Vec<Word> = if l == k { vec![*i] } else { ws.clone() };
                prefixes = prefixes
                    .into_iter()
                    .flat_map(|p| {
                        choices.iter().map(move |c| {
                            let mut q = p.clone();
                            q.extend_from_slice(c.letters());
                            q
                        })
                    })
                    .collect();
            }
            for letters in prefixes {
                image.add_assign(&Element::from_parts(Word::new(&letters)?, perm, poly.clone()));
            }
        }
        acc = engine.mul(&acc, &image)?;
        offset += h;
    }
    Ok(acc)
}

/// One factor of the `Λ_π` monomial basis: a partition per root part.
pub type LambdaLabel = Vec<Vec<u32>>;

/// `ψ_w y_π b e_π ψ_v^τ` is labelled by `(w, b, v)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CellLabel {
    pub w: Permutation,
    pub lambda: LambdaLabel,
    pub v: Permutation,
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self
            .lambda
            .iter()
            .map(|l| format!("m[{}]", l.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "w={} b={} v={}", self.w, b.join("*"), self.v)
    }
}

/// The elements attached to a root partition.
#[derive(Clone, Debug)]
pub struct CellDatum {
    pub pi: RootPartition,
    pub i_pi: Word,
    /// `y_π e(i_π)`.
    pub y_pi: Element,
    /// `ψ_π e(i_π)`.
    pub psi_pi: Element,
    pub e_pi: Element,
    /// The crossing word used for `ψ_π`.
    pub psi_pi_word: Vec<usize>,
}

impl CellDatum {
    pub fn new(engine: &Engine, pi: &RootPartition) -> Result<Self> {
        let i_pi = pi.word();
        let d = i_pi.len();
        let mut word = Vec::new();
        let mut dots = vec![0u32; d];
        for k in 0..pi.parts().len() {
            let (beta, p) = pi.parts()[k];
            let (h, p) = (beta.height(), p as usize);
            let off = pi.part_offset(k);
            if p > 1 {
                for r in symmetric_w0_word(p)? {
                    word.extend(block_crossing_word(h).into_iter().map(|x| x + off + (r - 1) * h));
                }
            }
            for s in 1..=p {
                dots[off + s * h - 1] = (s - 1) as u32;
            }
        }
        let y_pi = Element::from_parts(i_pi, Permutation::identity(d), Poly::monomial(Exps::from_slice(&dots), Int::from(1)));
        let psi_pi = engine.psi_word(&word, &i_pi)?;
        let e_pi = engine.mul(&psi_pi, &y_pi)?;
        let datum = CellDatum { pi: pi.clone(), i_pi, y_pi, psi_pi, e_pi, psi_pi_word: word };
        datum.check_invariants(engine)?;
        Ok(datum)
    }

    fn check_invariants(&self, engine: &Engine) -> Result<()> {
        let sh = self.pi.sh();
        let fail = |what: &str, x: &Element| {
            Err(KlrError::ConstructionFailed(format!("{} for {}: {x}", what, self.pi)))
        };
        if self.y_pi.homogeneous_degree() != Some(2 * sh) {
            return fail("deg y_pi != 2 sh", &self.y_pi);
        }
        if self.psi_pi.homogeneous_degree() != Some(-2 * sh) {
            return fail("deg psi_pi != -2 sh", &self.psi_pi);
        }
        if self.e_pi.homogeneous_degree() != Some(0) {
            return fail("deg e_pi != 0", &self.e_pi);
        }
        let t = engine.tau(&self.psi_pi);
        if t != self.psi_pi {
            return fail("tau(psi_pi) != psi_pi", &t);
        }
        let direct = engine.mul(&engine.mul(&self.psi_pi, &self.y_pi)?, &Element::idempotent(&self.i_pi))?;
        if direct != self.e_pi {
            return fail("psi_pi y_pi e(i_pi) != e_pi", &direct);
        }
        Ok(())
    }

    pub fn alpha(&self) -> RootVector {
        self.i_pi.content()
    }

    /// 1-based strand carrying `y_{k,s}` (`k` 0-based part, `s` 1-based block).
    pub fn block_dot(&self, k: usize, s: usize) -> usize {
        let h = self.pi.parts()[k].0.height();
        self.pi.part_offset(k) + s * h
    }

    /// Crossing word of `ψ_{k,r}`.
    pub fn block_crossing(&self, k: usize, r: usize) -> Vec<usize> {
        let h = self.pi.parts()[k].0.height();
        let off = self.pi.part_offset(k) + (r - 1) * h;
        block_crossing_word(h).into_iter().map(|x| x + off).collect()
    }

    /// `y_{k,s} e(i_π)`.
    pub fn block_dot_element(&self, k: usize, s: usize) -> Element {
        Element::from_parts(self.i_pi, Permutation::identity(self.i_pi.len()), Poly::var(self.block_dot(k, s)))
    }

    /// `f e(i_π)` for a polynomial in the strand variables.
    pub fn poly_element(&self, f: Poly) -> Element {
        Element::from_parts(self.i_pi, Permutation::identity(self.i_pi.len()), f)
    }
}

pub fn cell_datum(engine: &Engine, pi: &RootPartition) -> Result<CellDatum> {
    CellDatum::new(engine, pi)
}

/// The monomial basis of `Λ_π` in grading degree `n`, as polynomials in the
/// block dot variables.
pub fn lambda_pi_basis(pi: &RootPartition, n: i64) -> Vec<(LambdaLabel, Poly)> {
    if n < 0 || n % 2 != 0 {
        return Vec::new();
    }
    let parts = pi.parts();
    let vars: Vec<Vec<usize>> = (0..parts.len())
        .map(|k| {
            let h = parts[k].0.height();
            let off = pi.part_offset(k);
            (1..=parts[k].1 as usize).map(|s| off + s * h).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut acc: Vec<(LambdaLabel, Poly, u32)> = vec![(Vec::new(), Poly::one(), (n / 2) as u32)];
    for (k, vs) in vars.iter().enumerate() {
        let last = k + 1 == vars.len();
        let mut next = Vec::new();
        for (label, f, left) in acc {
            let sizes: Vec<u32> = if last { vec![left] } else { (0..=left).collect() };
            for t in sizes {
                for l in partitions(t, vs.len()) {
                    let mut label = label.clone();
                    label.push(l.clone());
                    next.push((label, f.mul(&monomial_symmetric(&l, vs)), left - t));
                }
            }
        }
        acc = next;
    }
    for (label, f, _) in acc {
        out.push((label, f));
    }
    out
}

/// `Λ_π` basis elements of degree `n`, realized as `b e(i_π)`.
pub fn lambda_pi_elements(pi: &RootPartition, n: i64) -> Vec<Element> {
    let i = pi.word();
    lambda_pi_basis(pi, n)
        .into_iter()
        .map(|(_, f)| Element::from_parts(i, Permutation::identity(i.len()), f))
        .collect()
}

/// Labels `(w, b, v)` of the spanning set of `I'_π` in degree `n`.
pub fn cell_labels(pi: &RootPartition, n: i64) -> Vec<CellLabel> {
    let i = pi.word();
    let reps = min_coset_reps(pi);
    let sh2 = 2 * pi.sh();
    let mut out = Vec::new();
    for w in &reps {
        for v in &reps {
            let rest = n - crossing_degree(w, &i) - crossing_degree(v, &i) - sh2;
            for (lambda, _) in lambda_pi_basis(pi, rest) {
                out.push(CellLabel { w: *w, lambda, v: *v });
            }
        }
    }
    out
}

struct Cell {
    datum: CellDatum,
    reps: Vec<Permutation>,
    /// `ψ_w e(i_π)` for `w ∈ S^π`.
    left: Vec<Element>,
    /// `τ(ψ_v e(i_π)) = e(i_π) ψ_v^τ`.
    right: Vec<Element>,
}

type CellElements = Arc<Vec<(CellLabel, Element)>>;

/// All cells of `R_α` with memoized per-degree data.
pub struct CellularStructure<'e> {
    engine: &'e Engine,
    alpha: RootVector,
    cells: Vec<Cell>,
    min_degree: i64,
    bases: Mutex<HashMap<i64, Arc<DegreeBasis>>>,
    elements: Mutex<HashMap<(usize, i64), CellElements>>,
    chains: Mutex<HashMap<(usize, bool, i64), Arc<Lattice>>>,
}

impl<'e> CellularStructure<'e> {
    pub fn new(engine: &'e Engine, alpha: &RootVector) -> Result<Self> {
        let mut cells = Vec::new();
        for pi in root_partitions(alpha)? {
            let datum = CellDatum::new(engine, &pi)?;
            let reps = min_coset_reps(&pi);
            let mut left = Vec::new();
            let mut right = Vec::new();
            for w in &reps {
                let x = Element::from_parts(datum.i_pi, *w, Poly::one());
                right.push(engine.tau(&x));
                left.push(x);
            }
            cells.push(Cell { datum, reps, left, right });
        }
        Ok(CellularStructure {
            engine,
            alpha: alpha.clone(),
            cells,
            min_degree: min_degree(alpha)?,
            bases: Mutex::new(HashMap::new()),
            elements: Mutex::new(HashMap::new()),
            chains: Mutex::new(HashMap::new()),
        })
    }

    pub fn engine(&self) -> &'e Engine {
        self.engine
    }

    pub fn alpha(&self) -> &RootVector {
        &self.alpha
    }

    /// Lowest degree of a nonzero element.
    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Root partitions in descending order; index 0 is the largest.
    pub fn partitions(&self) -> Vec<&RootPartition> {
        self.cells.iter().map(|c| &c.datum.pi).collect()
    }

    pub fn index_of(&self, pi: &RootPartition) -> Option<usize> {
        self.cells.iter().position(|c| c.datum.pi == *pi)
    }

    pub fn datum(&self, idx: usize) -> &CellDatum {
        &self.cells[idx].datum
    }

    pub fn coset_reps(&self, idx: usize) -> &[Permutation] {
        &self.cells[idx].reps
    }

    pub fn basis(&self, n: i64) -> Result<Arc<DegreeBasis>> {
        if let Some(b) = self.bases.lock().get(&n) {
            return Ok(b.clone());
        }
        let b = Arc::new(DegreeBasis::new(&self.alpha, n)?);
        self.bases.lock().insert(n, b.clone());
        Ok(b)
    }

    /// `ψ_w y_π b e_π ψ_v^τ` over all labels of degree `n`.
    pub fn cell_elements(&self, idx: usize, n: i64) -> Result<CellElements> {
        if let Some(x) = self.elements.lock().get(&(idx, n)) {
            return Ok(x.clone());
        }
        let cell = &self.cells[idx];
        let datum = &cell.datum;
        let e = self.engine;
        let mut mids: HashMap<LambdaLabel, Element> = HashMap::new();
        let mut lefts: HashMap<(usize, LambdaLabel), Element> = HashMap::new();
        let index: HashMap<Permutation, usize> = cell.reps.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        let mut out = Vec::new();
        for label in cell_labels(&datum.pi, n) {
            if !mids.contains_key(&label.lambda) {
                let b_deg = 2 * label.lambda.iter().flatten().sum::<u32>() as i64;
                let b = lambda_pi_basis(&datum.pi, b_deg)
                    .into_iter()
                    .find(|(l, _)| *l == label.lambda)
                    .expect("label from the same enumeration")
                    .1;
                let yb = datum.poly_element(b).clone();
                let yb = e.mul(&datum.y_pi, &yb)?;
                mids.insert(label.lambda.clone(), e.mul(&yb, &datum.e_pi)?);
            }
            let wi = index[&label.w];
            let key = (wi, label.lambda.clone());
            if !lefts.contains_key(&key) {
                let x = e.mul(&cell.left[wi], &mids[&label.lambda])?;
                lefts.insert(key.clone(), x);
            }
            let x = e.mul(&lefts[&key], &cell.right[index[&label.v]])?;
            out.push((label, x));
        }
        let out = Arc::new(out);
        self.elements.lock().insert((idx, n), out.clone());
        Ok(out)
    }

    /// The degree-`n` component of `I'_π`.
    pub fn cell_component(&self, idx: usize, n: i64) -> Result<Lattice> {
        let basis = self.basis(n)?;
        basis.lattice(self.cell_elements(idx, n)?.iter().map(|(_, x)| x))
    }

    /// `Σ_{σ ≥ π} I'_σ` (or `σ > π` when `strict`) in degree `n`.
    pub fn chain_component(&self, idx: usize, strict: bool, n: i64) -> Result<Arc<Lattice>> {
        if let Some(l) = self.chains.lock().get(&(idx, strict, n)) {
            return Ok(l.clone());
        }
        let basis = self.basis(n)?;
        let top = if strict { idx } else { idx + 1 };
        let mut l = Lattice::new(basis.dim());
        for s in 0..top {
            for (_, x) in self.cell_elements(s, n)?.iter() {
                l.insert(basis.coords(x)?);
            }
        }
        let l = Arc::new(l);
        self.chains.lock().insert((idx, strict, n), l.clone());
        Ok(l)
    }

    /// Whether a homogeneous element lies in `I_{>π}` (or `I_π`).
    pub fn in_chain(&self, idx: usize, strict: bool, x: &Element) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        let Some(n) = x.homogeneous_degree() else {
            let parts = x.homogeneous_components();
            for part in parts.values() {
                if !self.in_chain(idx, strict, part)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        };
        let basis = self.basis(n)?;
        Ok(self.chain_component(idx, strict, n)?.contains(&basis.coords(x)?))
    }

    /// `ψ_w y^M e(i_σ) ψ_v^τ` for all `w, v ∈ S_d` and dot monomials `M`
    /// landing in degree `n`; these span `(R e(i_σ) R)_n`.
    fn ideal_generators(&self, idx: usize, n: i64) -> impl Iterator<Item = Result<Element>> + '_ {
        let i = self.cells[idx].datum.i_pi;
        let d = i.len();
        let perms = Permutation::all(d);
        let taus: Vec<(i64, Element)> = perms
            .iter()
            .map(|v| (crossing_degree(v, &i), self.engine.tau(&Element::from_parts(i, *v, Poly::one()))))
            .collect();
        let lefts: Vec<(Permutation, i64)> = perms.iter().map(|w| (*w, crossing_degree(w, &i))).collect();
        taus.into_iter().flat_map(move |(dv, tv)| {
            let lefts = lefts.clone();
            lefts.into_iter().flat_map(move |(w, dw)| {
                let rest = n - dv - dw;
                let monos = if rest >= 0 && rest % 2 == 0 { exponents_of_total(d, (rest / 2) as u32) } else { Vec::new() };
                let tv = tv.clone();
                monos.into_iter().map(move |m| {
                    let x = Element::monomial(&NormalMonomial { w, m, i }, Int::from(1));
                    self.engine.mul(&x, &tv)
                })
            })
        })
    }

    /// Compares `(R e(i_σ) R)_n` with the cell lattices: every generator must
    /// lie in `I_σ`, and `I'_σ` must lie in the span of the generators.
    fn ideal_check(&self, idx: usize, n: i64) -> Result<Option<String>> {
        let basis = self.basis(n)?;
        let chain = self.chain_component(idx, false, n)?;
        let own = self.cell_component(idx, n)?;
        let chain_full = chain.is_full();
        let mut span = Lattice::new(basis.dim());
        let mut covered = own.rank() == 0;
        for g in self.ideal_generators(idx, n) {
            let v = basis.coords(&g?)?;
            if !chain_full && !chain.contains(&v) {
                return Ok(Some(format!("{} not in I_pi", basis.element(&v))));
            }
            if !covered && span.insert(v) && span.rank() >= own.rank() {
                covered = span.contains_lattice(&own);
            }
            if covered && chain_full {
                break;
            }
        }
        if !covered {
            return Ok(Some(format!("I'_pi not inside R e(i_pi) R (rank {} vs {})", span.rank(), own.rank())));
        }
        Ok(None)
    }

    fn degrees(&self, cutoff: i64) -> Vec<i64> {
        (self.min_degree..=cutoff).collect()
    }
}

/// The degree-`n` component of `I'_π` in PBW coordinates.
pub fn cell_component(engine: &Engine, pi: &RootPartition, n: i64) -> Result<Lattice> {
    let s = CellularStructure::new(engine, &pi.alpha())?;
    let idx = s.index_of(pi).expect("partition of its own alpha");
    s.cell_component(idx, n)
}

/// The degree-`n` component of `Σ_{σ ∈ set} R_α e(i_σ) R_α`.
pub fn two_sided_ideal_component(
    engine: &Engine,
    alpha: &RootVector,
    set: &[RootPartition],
    n: i64,
) -> Result<Lattice> {
    let s = CellularStructure::new(engine, alpha)?;
    let basis = s.basis(n)?;
    let mut l = Lattice::new(basis.dim());
    for pi in set {
        let idx = s
            .index_of(pi)
            .ok_or_else(|| KlrError::InvalidArgument(format!("{pi} is not a root partition of {alpha}")))?;
        for g in s.ideal_generators(idx, n) {
            if l.insert(basis.coords(&g?)?) && l.is_full() {
                return Ok(l);
            }
        }
    }
    Ok(l)
}

/// The cellular basis in one degree with its matrix against the PBW basis.
#[derive(Clone, Debug)]
pub struct CellularBasis {
    pub degree: i64,
    pub elements: Vec<(RootPartition, CellLabel, Element)>,
    pub pbw: Vec<NormalMonomial>,
    pub matrix: IntegerMatrix,
}

impl CellularBasis {
    pub fn is_unimodular(&self) -> bool {
        crate::zlattice::is_unimodular_square(&self.matrix)
    }
}

pub fn cellular_basis(engine: &Engine, alpha: &RootVector, n: i64) -> Result<CellularBasis> {
    let s = CellularStructure::new(engine, alpha)?;
    cellular_basis_in(&s, n)
}

pub fn cellular_basis_in(s: &CellularStructure<'_>, n: i64) -> Result<CellularBasis> {
    let basis = s.basis(n)?;
    let mut elements = Vec::new();
    let mut rows = Vec::new();
    for idx in 0..s.len() {
        for (label, x) in s.cell_elements(idx, n)?.iter() {
            rows.push(basis.coords(x)?);
            elements.push((s.datum(idx).pi.clone(), label.clone(), x.clone()));
        }
    }
    Ok(CellularBasis {
        degree: n,
        elements,
        pbw: basis.monomials().to_vec(),
        matrix: IntegerMatrix::from_sparse(basis.dim(), &rows),
    })
}

fn collect<T: Send>(tasks: Vec<T>, f: impl Fn(T) -> Result<Vec<CheckRecord>> + Sync + Send) -> Result<Report> {
    let results: Vec<Result<Vec<CheckRecord>>> = tasks.into_par_iter().map(f).collect();
    let mut report = Report::new();
    for r in results {
        for rec in r? {
            report.push(rec);
        }
    }
    report.sort();
    Ok(report)
}

fn tasks(s: &CellularStructure<'_>, cutoff: i64) -> Vec<(usize, i64)> {
    (0..s.len()).flat_map(|idx| s.degrees(cutoff).into_iter().map(move |n| (idx, n))).collect()
}

/// The ideal chain: `I_π = Σ_{σ≥π} R e(i_σ) R` per degree, with the
/// membership witnesses below `I_{>π}` and the `τ`-stability of each `I'_π`.
pub fn verify_cell_chain(engine: &Engine, alpha: &RootVector, cutoff: i64) -> Result<Report> {
    let s = CellularStructure::new(engine, alpha)?;
    verify_cell_chain_in(&s, cutoff)
}

pub fn verify_cell_chain_in(s: &CellularStructure<'_>, cutoff: i64) -> Result<Report> {
    let alpha = s.alpha().clone();
    let per: Vec<((usize, i64), Option<String>)> = tasks(s, cutoff)
        .into_par_iter()
        .map(|(idx, n)| Ok(((idx, n), s.ideal_check(idx, n)?)))
        .collect::<Result<_>>()?;
    let per: BTreeMap<(usize, i64), Option<String>> = per.into_iter().collect();
    let mut report = collect(tasks(s, cutoff), |(idx, n)| {
        let pi = &s.datum(idx).pi;
        let bad = (0..=idx).find_map(|k| per[&(k, n)].clone().map(|w| format!("sigma={}: {w}", s.datum(k).pi)));
        let mut out = vec![CheckRecord::new("I_pi = sum R e(i_sigma) R", &alpha, bad.is_none())
            .pi(pi)
            .degree(n)
            .witness_if_failed(|| bad.unwrap_or_default())];

        let basis = s.basis(n)?;
        let elems = s.cell_elements(idx, n)?;
        let own = basis.lattice(elems.iter().map(|(_, x)| x))?;
        let taus: Vec<Element> = elems.iter().map(|(_, x)| s.engine().tau(x)).collect();
        let tau_l = basis.lattice(&taus)?;
        out.push(CheckRecord::new("tau(I'_pi) = I'_pi", &alpha, lattice_equal(&own, &tau_l)).pi(pi).degree(n));

        let datum = s.datum(idx);
        let i_pi = datum.i_pi;
        let d = i_pi.len();
        if n == 0 {
            let mut bad = None;
            for i in words_of(&alpha)?.into_iter().filter(|i| *i > i_pi) {
                if !s.in_chain(idx, true, &Element::idempotent(&i))? {
                    bad = Some(format!("e{i}"));
                    break;
                }
            }
            out.push(CheckRecord::new("e(i) in I_>pi for i > i_pi", &alpha, bad.is_none())
                .pi(pi)
                .degree(n)
                .witness_if_failed(|| bad.unwrap_or_default()));
        }
        // ψ_w f e(i_π) with w ∈ S_π \ {1} and f a dot monomial, in this degree.
        let mut bad = None;
        for w in young_subgroup(&pi.block_sizes()).into_iter().filter(|w| !w.is_identity()) {
            let rest = n - crossing_degree(&w, &i_pi);
            if rest < 0 || rest % 2 != 0 || rest > 4 {
                continue;
            }
            for m in exponents_of_total(d, (rest / 2) as u32) {
                let x = Element::monomial(&NormalMonomial { w, m, i: i_pi }, Int::from(1));
                if !s.in_chain(idx, true, &x)? {
                    bad = Some(x.to_string());
                }
            }
        }
        out.push(CheckRecord::new("psi_w P e(i_pi) in I_>pi for w in S_pi", &alpha, bad.is_none())
            .pi(pi)
            .degree(n)
            .witness_if_failed(|| bad.unwrap_or_default()));
        if n == 2 {
            let mut bad = None;
            let mut start = 0;
            for b in pi.block_sizes() {
                for r in start + 1..=start + b {
                    for t in r + 1..=start + b {
                        let x = datum.poly_element(Poly::var(r).sub(&Poly::var(t)));
                        if !s.in_chain(idx, true, &x)? {
                            bad = Some(format!("y{r} - y{t}"));
                        }
                    }
                }
                start += b;
            }
            out.push(CheckRecord::new("y_r e(i_pi) = y_s e(i_pi) mod I_>pi", &alpha, bad.is_none())
                .pi(pi)
                .degree(n)
                .witness_if_failed(|| bad.unwrap_or_default()));
        }
        Ok(out)
    })?;
    for idx in 0..s.len() {
        for r in cell_identities(s, idx)? {
            report.push(r);
        }
    }
    report.sort();
    for idx in 0..s.len() {
        let datum = s.datum(idx);
        let sq = s.engine().mul(&datum.e_pi, &datum.e_pi)?;
        let exact = if sq == datum.e_pi { "exactly idempotent" } else { "idempotent only modulo I_>pi" };
        report.notes.push(format!("{alpha} pi={}: e_pi {exact}", datum.pi));
    }
    Ok(report)
}

/// `e_π² ≡ e_π`, exact commutation with `Λ_π`, and the nilHecke relations
/// for the block generators, all modulo `I_{>π}`.
fn cell_identities(s: &CellularStructure<'_>, idx: usize) -> Result<Vec<CheckRecord>> {
    let e = s.engine();
    let datum = s.datum(idx);
    let alpha = s.alpha();
    let pi = &datum.pi;
    let mut out = Vec::new();
    let rec = |name: &str, ok: bool| CheckRecord::new(name, alpha, ok).pi(pi);

    let diff = e.mul(&datum.e_pi, &datum.e_pi)?.sub(&datum.e_pi)?;
    out.push(rec("e_pi^2 = e_pi mod I_>pi", s.in_chain(idx, true, &diff)?).witness_if_failed(|| diff.to_string()));

    let mut bad = None;
    for n in [2, 4] {
        for b in lambda_pi_elements(pi, n) {
            for x in [&datum.psi_pi, &datum.e_pi] {
                let lhs = e.mul(x, &b)?;
                let rhs = e.mul(&b, x)?;
                if lhs != rhs {
                    bad = Some(format!("{b} against {x}"));
                }
            }
        }
    }
    out.push(rec("psi_pi e(i_pi) and e_pi commute with Lambda_pi", bad.is_none()).witness_if_failed(|| bad.unwrap_or_default()));

    let one = Element::idempotent(&datum.i_pi);
    for (k, &(_, p)) in pi.parts().iter().enumerate() {
        let p = p as usize;
        if p < 2 {
            continue;
        }
        let psi: Vec<Element> =
            (1..p).map(|r| e.psi_word(&datum.block_crossing(k, r), &datum.i_pi)).collect::<Result<_>>()?;
        let y: Vec<Element> = (1..=p).map(|s| datum.block_dot_element(k, s)).collect();
        let mut checks: Vec<(String, Element)> = Vec::new();
        for r in 1..p {
            let pr = &psi[r - 1];
            checks.push((format!("psi_{r}^2"), e.mul(pr, pr)?));
            if r + 1 < p {
                let pn = &psi[r];
                let lhs = e.mul(&e.mul(pr, pn)?, pr)?;
                let rhs = e.mul(&e.mul(pn, pr)?, pn)?;
                checks.push((format!("braid at {r}"), lhs.sub(&rhs)?));
            }
            for t in r + 2..p {
                let pt = &psi[t - 1];
                checks.push((format!("psi_{r} psi_{t} commute"), e.mul(pr, pt)?.sub(&e.mul(pt, pr)?)?));
            }
            for s_ in 1..=p {
                if s_ != r && s_ != r + 1 {
                    let ys = &y[s_ - 1];
                    checks.push((format!("psi_{r} y_{s_} commute"), e.mul(pr, ys)?.sub(&e.mul(ys, pr)?)?));
                }
            }
            let (yr, yn) = (&y[r - 1], &y[r]);
            let x = e.mul(pr, yn)?.sub(&e.mul(yr, pr)?)?.sub(&one)?;
            checks.push((format!("psi_{r} y_{} = y_{r} psi_{r} + 1", r + 1), x));
            let x = e.mul(yn, pr)?.sub(&e.mul(pr, yr)?)?.sub(&one)?;
            checks.push((format!("y_{} psi_{r} = psi_{r} y_{r} + 1", r + 1), x));
        }
        let mut bad = None;
        for (name, x) in &checks {
            if !s.in_chain(idx, true, x)? {
                bad = Some(format!("{name}: {x}"));
            }
        }
        out.push(
            rec(&format!("nilHecke relations for part {}", k + 1), bad.is_none()).witness_if_failed(|| bad.unwrap_or_default()),
        );
    }
    Ok(out)
}

/// Per degree: the cellular set is a unimodular change of basis, and the
/// cell components add up directly to the whole component.
pub fn verify_cellular_basis(engine: &Engine, alpha: &RootVector, cutoff: i64) -> Result<Report> {
    let s = CellularStructure::new(engine, alpha)?;
    verify_cellular_basis_in(&s, cutoff)
}

pub fn verify_cellular_basis_in(s: &CellularStructure<'_>, cutoff: i64) -> Result<Report> {
    let alpha = s.alpha().clone();
    collect(s.degrees(cutoff), |n| {
        let cb = cellular_basis_in(s, n)?;
        let dim = cb.pbw.len();
        let ok = cb.is_unimodular();
        let mut out = vec![CheckRecord::new("cellular basis unimodular", &alpha, ok).degree(n).witness_if_failed(|| {
            format!("{} elements against {dim} PBW monomials", cb.elements.len())
        })];
        let mut total = Lattice::new(dim);
        let mut ranks = 0;
        for idx in 0..s.len() {
            let c = s.cell_component(idx, n)?;
            ranks += c.rank();
            for r in c.basis() {
                total.insert(r.clone());
            }
        }
        let ok = ranks == dim && total.is_full();
        out.push(CheckRecord::new("direct sum of I'_pi = R", &alpha, ok).degree(n).witness_if_failed(|| {
            format!("sum of ranks {ranks}, dimension {dim}, sum full: {}", total.is_full())
        }));
        Ok(out)
    })
}

fn plus(base: &Lattice, rows: &[SparseVec]) -> Lattice {
    let mut l = base.clone();
    for r in rows {
        l.insert(r.clone());
    }
    l
}

/// Structure of `R̄ = R_α / I_{>π}` near `e_π`, per degree.
pub fn verify_quotient_structure(engine: &Engine, pi: &RootPartition, cutoff: i64) -> Result<Report> {
    let s = CellularStructure::new(engine, &pi.alpha())?;
    let idx = s.index_of(pi).expect("partition of its own alpha");
    verify_quotient_structure_in(&s, idx, cutoff)
}

pub fn verify_quotient_structure_in(s: &CellularStructure<'_>, idx: usize, cutoff: i64) -> Result<Report> {
    collect(s.degrees(cutoff), |n| quotient_degree(s, idx, n))
}

fn quotient_degree(s: &CellularStructure<'_>, idx: usize, n: i64) -> Result<Vec<CheckRecord>> {
    let e = s.engine();
    let alpha = s.alpha();
    let datum = s.datum(idx);
    let pi = &datum.pi;
    let i_pi = datum.i_pi;
    let basis = s.basis(n)?;
    let j = s.chain_component(idx, true, n)?;
    let i_full = s.chain_component(idx, false, n)?;
    let coords = |xs: &[Element]| -> Result<Vec<SparseVec>> { xs.iter().map(|x| basis.coords(x)).collect() };
    let rec = |name: &str, ok: bool| CheckRecord::new(name, alpha, ok).pi(pi).degree(n);
    let independent = |rows: &[SparseVec]| plus(&j, rows).rank() == j.rank() + rows.len();
    let mut out = Vec::new();

    let cell = &s.cells[idx];
    let sh2 = 2 * pi.sh();
    // Monomials ψ_w y^m e(j) of this degree with right word i_π, or left word i_π.
    let into: Vec<Element> = basis.monomials().iter().filter(|t| t.i == i_pi).map(|t| Element::monomial(t, Int::from(1))).collect();
    let out_of: Vec<Element> =
        basis.monomials().iter().filter(|t| t.left_word() == i_pi).map(|t| Element::monomial(t, Int::from(1))).collect();

    // (i) Λ_π -> ē R̄ ē, b ↦ b e_π.
    let lam: Vec<(LambdaLabel, Poly)> = lambda_pi_basis(pi, n);
    let b_e: Vec<Element> = lam.iter().map(|(_, b)| e.mul(&datum.poly_element(b.clone()), &datum.e_pi)).collect::<Result<_>>()?;
    let ere: Vec<Element> = into
        .iter()
        .filter(|x| x.terms().all(|(t, _)| t.left_word() == i_pi))
        .map(|x| e.mul(&e.mul(&datum.e_pi, x)?, &datum.e_pi))
        .collect::<Result<_>>()?;
    let rows_be = coords(&b_e)?;
    let ok = independent(&rows_be) && lattice_equal(&plus(&j, &rows_be), &plus(&j, &coords(&ere)?));
    out.push(rec("(i) Lambda_pi -> e R e bijective", ok));
    let mut mult_ok = true;
    for n1 in (0..=n).step_by(2) {
        for (_, b1) in lambda_pi_basis(pi, n1) {
            for (_, b2) in lambda_pi_basis(pi, n - n1) {
                let lhs = e.mul(&e.mul(&datum.poly_element(b1.clone()), &datum.e_pi)?, &e.mul(&datum.poly_element(b2.clone()), &datum.e_pi)?)?;
                let rhs = e.mul(&datum.poly_element(b1.mul(&b2)), &datum.e_pi)?;
                mult_ok &= s.in_chain(idx, true, &lhs.sub(&rhs)?)?;
            }
        }
    }
    out.push(rec("(i) multiplicative", mult_ok));

    // (ii) R̄ ē free over ē R̄ ē on ψ_w y_π e_π.
    let mut left_basis = Vec::new();
    for (wi, w) in cell.reps.iter().enumerate() {
        let rest = n - crossing_degree(w, &i_pi) - sh2;
        for (_, b) in lambda_pi_basis(pi, rest) {
            let yb = e.mul(&datum.y_pi, &datum.poly_element(b))?;
            left_basis.push(e.mul(&cell.left[wi], &e.mul(&yb, &datum.e_pi)?)?);
        }
    }
    let re: Vec<Element> = into.iter().map(|x| e.mul(x, &datum.e_pi)).collect::<Result<_>>()?;
    let rows = coords(&left_basis)?;
    let ok = independent(&rows) && lattice_equal(&plus(&j, &rows), &plus(&j, &coords(&re)?));
    out.push(rec("(ii) R e_pi free with basis psi_w y_pi e_pi", ok).witness_if_failed(|| {
        format!("{} candidates, rank mod I_>pi {}", rows.len(), plus(&j, &rows).rank() - j.rank())
    }));

    // (iii) ē R̄ free over ē R̄ ē on e_π ψ_v^τ.
    let mut right_basis = Vec::new();
    for (vi, v) in cell.reps.iter().enumerate() {
        let rest = n - crossing_degree(v, &i_pi);
        for (_, b) in lambda_pi_basis(pi, rest) {
            let yb = e.mul(&datum.y_pi, &datum.poly_element(b))?;
            let x = e.mul(&e.mul(&datum.psi_pi, &yb)?, &datum.e_pi)?;
            right_basis.push(e.mul(&x, &cell.right[vi])?);
        }
    }
    let er: Vec<Element> = out_of.iter().map(|x| e.mul(&datum.e_pi, x)).collect::<Result<_>>()?;
    let rows = coords(&right_basis)?;
    let ok = independent(&rows) && lattice_equal(&plus(&j, &rows), &plus(&j, &coords(&er)?));
    out.push(rec("(iii) e_pi R free with basis e_pi psi_v^tau", ok));

    // (iv) R̄ē ⊗ ēR̄ -> R̄ēR̄ on the tensor basis ψ_w y_π e_π ⊗ b e_π ψ_v^τ.
    let mut images = Vec::new();
    let ye = e.mul(&datum.y_pi, &datum.e_pi)?;
    for (wi, w) in cell.reps.iter().enumerate() {
        let lw = e.mul(&cell.left[wi], &ye)?;
        for (vi, v) in cell.reps.iter().enumerate() {
            let rest = n - crossing_degree(w, &i_pi) - crossing_degree(v, &i_pi) - sh2;
            for (_, b) in lambda_pi_basis(pi, rest) {
                let be = e.mul(&datum.poly_element(b), &datum.e_pi)?;
                let r = e.mul(&e.mul(&be, &datum.e_pi)?, &cell.right[vi])?;
                images.push(e.mul(&lw, &r)?);
            }
        }
    }
    let rows = coords(&images)?;
    let ok = independent(&rows) && lattice_equal(&plus(&j, &rows), &i_full);
    out.push(rec("(iv) multiplication map bijective", ok));

    // (v) R̄ ē R̄ = I_π / I_{>π}: each x e_π z lies in I_π, and they reach it.
    let mut span = plus(&j, &rows);
    let mut inside = true;
    let perms = Permutation::all(i_pi.len());
    'outer: for v in &perms {
        let tv = e.tau(&Element::from_parts(i_pi, *v, Poly::one()));
        let dv = crossing_degree(v, &i_pi);
        for t in s.basis(n - dv)?.monomials().iter().filter(|t| t.i == i_pi) {
            for split in 0..=t.m.total() {
                // Split y^m between the two sides of e_π.
                for m2 in exponents_of_total(i_pi.len(), split) {
                    if !m2.divides(&t.m) {
                        continue;
                    }
                    let mut m1 = t.m;
                    for r in 1..=i_pi.len() {
                        m1.set(r, t.m.get(r) - m2.get(r));
                    }
                    let x = Element::monomial(&NormalMonomial { w: t.w, m: m1, i: i_pi }, Int::from(1));
                    let z = e.mul(&datum.poly_element(Poly::monomial(m2, Int::from(1))), &tv)?;
                    let g = basis.coords(&e.mul(&e.mul(&x, &datum.e_pi)?, &z)?)?;
                    if !i_full.contains(&g) {
                        inside = false;
                        break 'outer;
                    }
                    span.insert(g);
                }
            }
        }
    }
    out.push(rec("(v) R e_pi R = I_pi mod I_>pi", inside && lattice_equal(&span, &i_full)));
    Ok(out)
}

/// The affine cell ideal conditions for every layer of the chain.
pub fn verify_affine_cellularity(engine: &Engine, alpha: &RootVector, cutoff: i64) -> Result<Report> {
    let s = CellularStructure::new(engine, alpha)?;
    verify_affine_cellularity_in(&s, cutoff)
}

pub fn verify_affine_cellularity_in(s: &CellularStructure<'_>, cutoff: i64) -> Result<Report> {
    let alpha = s.alpha().clone();
    collect(tasks(s, cutoff), |(idx, n)| {
        let e = s.engine();
        let datum = s.datum(idx);
        let pi = &datum.pi;
        let basis = s.basis(n)?;
        let j = s.chain_component(idx, true, n)?;
        let rec = |name: &str, ok: bool| CheckRecord::new(name, &alpha, ok).pi(pi).degree(n);
        let elems = s.cell_elements(idx, n)?;
        let mut out = Vec::new();

        let chain = s.chain_component(idx, false, n)?;
        let mut taus = Lattice::new(basis.dim());
        for k in 0..=idx {
            for (_, x) in s.cell_elements(k, n)?.iter() {
                taus.insert(basis.coords(&e.tau(x))?);
            }
        }
        out.push(rec("tau(I_pi) = I_pi", lattice_equal(&taus, &chain)));

        // Δ = V ⊗ Λ_π with V free on S^π: the left factors stay independent
        // modulo I_{>π}.
        let reps = s.coset_reps(idx);
        let sh2 = 2 * pi.sh();
        let mut rows = Vec::new();
        let cell = &s.cells[idx];
        for (wi, w) in reps.iter().enumerate() {
            for (_, b) in lambda_pi_basis(pi, n - crossing_degree(w, &datum.i_pi) - sh2) {
                let yb = e.mul(&datum.y_pi, &datum.poly_element(b))?;
                rows.push(basis.coords(&e.mul(&cell.left[wi], &e.mul(&yb, &datum.e_pi)?)?)?);
            }
        }
        let ok = plus(&j, &rows).rank() == j.rank() + rows.len();
        out.push(rec(&format!("Delta free of rank |S^pi| = {}", reps.len()), ok));

        // τ(c(w, b, v)) ≡ c(v, b, w) modulo I_{>π}.
        let by_label: HashMap<&CellLabel, &Element> = elems.iter().map(|(l, x)| (l, x)).collect();
        let mut bad = None;
        for (label, x) in elems.iter() {
            let swapped = CellLabel { w: label.v, lambda: label.lambda.clone(), v: label.w };
            let Some(y) = by_label.get(&swapped) else {
                bad = Some(format!("no partner for {label}"));
                break;
            };
            let diff = e.tau(x).sub(y)?;
            if !j.contains(&basis.coords(&diff)?) {
                bad = Some(format!("{label}: {diff}"));
                break;
            }
        }
        out.push(rec("tau(c(w,b,v)) = c(v,b,w) mod I_>pi", bad.is_none()).witness_if_failed(|| bad.unwrap_or_default()));
        Ok(out)
    })
}
