//! Exact integer linear algebra: sublattices of `Z^n`, Hermite normal form,
//! membership and unimodularity.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::int::Int;

/// A sparse integer vector with strictly increasing indices.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(u32, Int)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn from_dense(v: &[Int]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as u32, c.clone())).collect(),
        }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self::from_dense(&v.iter().map(|&c| Int::from(c)).collect::<Vec<_>>())
    }

    /// Builds from unsorted pairs, summing repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Int)>) -> Self {
        let mut map: BTreeMap<u32, Int> = BTreeMap::new();
        for (k, c) in pairs {
            *map.entry(k as u32).or_default() += c;
        }
        SparseVec { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Int)> {
        self.entries.iter().map(|(k, c)| (*k as usize, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<(usize, &Int)> {
        self.entries.first().map(|(k, c)| (*k as usize, c))
    }

    pub fn get(&self, k: usize) -> Int {
        match self.entries.binary_search_by_key(&(k as u32), |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Int::default(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Int> {
        let mut out = vec![Int::default(); n];
        for (k, c) in &self.entries {
            out[*k as usize] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Int) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(k, a)| (*k, a * c)).collect() }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: &Int, other: &SparseVec, b: &Int) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while p < x.len() || q < y.len() {
            let take_x = q >= y.len() || (p < x.len() && x[p].0 < y[q].0);
            let take_y = p >= x.len() || (q < y.len() && y[q].0 < x[p].0);
            let (k, c) = if take_x {
                p += 1;
                (x[p - 1].0, &x[p - 1].1 * a)
            } else if take_y {
                q += 1;
                (y[q - 1].0, &y[q - 1].1 * b)
            } else {
                p += 1;
                q += 1;
                (x[p - 1].0, &x[p - 1].1 * a + &y[q - 1].1 * b)
            };
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        SparseVec { entries: out }
    }

    /// `self - c * other`.
    pub fn sub_scaled(&self, c: &Int, other: &SparseVec) -> SparseVec {
        self.combine(&Int::from(1), other, &-c)
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Int::from(-1))
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(k, c)| (k, c))).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Int>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![vec![Int::default(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k][k] = Int::from(1);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Int>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&c| Int::from(c)).collect()).collect())
    }

    pub fn from_sparse(cols: usize, rows: &[SparseVec]) -> Self {
        Self::from_rows(cols, rows.iter().map(|r| r.to_dense(cols)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r][c]
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r]
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        self.data.iter().map(|r| SparseVec::from_dense(r)).collect()
    }

    /// Determinant by fraction-free elimination; `None` unless square.
    pub fn determinant(&self) -> Option<Int> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = Int::from(1);
        let mut prev = Int::from(1);
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Some(Int::default());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v.div_exact(&prev);
                }
                a[i][k] = Int::default();
            }
            prev = a[k][k].clone();
        }
        Some(sign * prev)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in &self.data {
            let parts: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// A sublattice of `Z^cols`, held as echelon rows keyed by pivot column.
#[derive(Clone)]
pub struct Lattice {
    cols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Lattice {
    pub fn new(cols: usize) -> Self {
        Lattice { cols, rows: BTreeMap::new() }
    }

    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut l = Lattice::new(cols);
        for r in rows {
            l.insert(r.clone());
        }
        l
    }

    pub fn from_matrix(m: &IntegerMatrix) -> Self {
        Self::from_rows(m.cols(), &m.sparse_rows())
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Whether the lattice is all of `Z^cols`.
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols && self.rows.values().all(|r| r.lead().unwrap().1.is_one())
    }

    /// Adds `v` to the generating set. Returns whether the lattice grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.entries().all(|(k, _)| k < self.cols));
        let mut v = v;
        let mut grew = false;
        while let Some((p, b)) = v.lead() {
            let b = b.clone();
            let Some(row) = self.rows.get_mut(&p) else {
                if b.is_negative() {
                    v = v.neg();
                }
                self.rows.insert(p, v);
                return true;
            };
            let a = row.lead().unwrap().1.clone();
            if a.divides(&b) {
                v = v.sub_scaled(&b.div_exact(&a), row);
            } else {
                let (g, s, t) = Int::extended_gcd(&a, &b);
                let new_row = row.combine(&s, &v, &t);
                v = v.combine(&a.div_exact(&g), row, &-b.div_exact(&g));
                *row = new_row;
                grew = true;
            }
        }
        grew
    }

    /// Reduces `v` against the echelon rows; the result is zero iff `v` is in
    /// the lattice.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        while let Some((p, b)) = v.lead() {
            let Some(row) = self.rows.get(&p) else {
                break;
            };
            let a = row.lead().unwrap().1;
            if !a.divides(b) {
                break;
            }
            let q = b.div_exact(a);
            v = v.sub_scaled(&q, row);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.values().all(|r| self.contains(r))
    }

    /// Canonical row Hermite normal form: positive pivots, entries above
    /// each pivot reduced into `[0, pivot)`.
    pub fn hnf_rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = self.rows.values().cloned().collect();
        for i in 0..rows.len() {
            let (p, pivot) = {
                let (p, c) = rows[i].lead().unwrap();
                (p, c.clone())
            };
            for k in 0..i {
                let q = rows[k].get(p).div_mod_floor(&pivot).0;
                if !q.is_zero() {
                    rows[k] = rows[k].sub_scaled(&q, &rows[i]);
                }
            }
        }
        rows
    }

    pub fn hnf(&self) -> IntegerMatrix {
        IntegerMatrix::from_sparse(self.cols, &self.hnf_rows())
    }

    /// Echelon rows, sorted by pivot.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        lattice_equal(self, other)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(rank {} in Z^{}) {:?}", self.rank(), self.cols, self.hnf())
    }
}

pub fn hnf(m: &IntegerMatrix) -> IntegerMatrix {
    Lattice::from_matrix(m).hnf()
}

pub fn member(v: &[Int], l: &Lattice) -> bool {
    l.contains(&SparseVec::from_dense(v))
}

pub fn lattice_equal(a: &Lattice, b: &Lattice) -> bool {
    a.cols == b.cols && a.rank() == b.rank() && a.hnf_rows() == b.hnf_rows()
}

pub fn is_unimodular_square(m: &IntegerMatrix) -> bool {
    m.rows() == m.cols() && Lattice::from_matrix(m).is_full()
}

/// Integer coefficients `c` with `Σ c_k rows[k] = target`, if any. Unique
/// when the rows are linearly independent.
pub fn solve(cols: usize, rows: &[SparseVec], target: &SparseVec) -> Option<Vec<Int>> {
    // Augment each row with a unit vector recording its index.
    let n = rows.len();
    let mut l = Lattice::new(cols + n);
    for (k, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.entries.push(((cols + k) as u32, Int::from(1)));
        l.insert(aug);
    }
    let reduced = l.reduce(target);
    if reduced.lead().map_or(false, |(p, _)| p < cols) {
        return None;
    }
    // target - Σ q_k aug_k = (0 | -c)
    let mut out = vec![Int::default(); n];
    for (k, c) in reduced.entries() {
        out[k - cols] = -c;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&m(&[&[2, 0], &[0, 3]])), m(&[&[2, 0], &[0, 3]]));
        assert_eq!(hnf(&m(&[&[1, 1], &[1, 1]])), m(&[&[1, 1]]));
        assert_eq!(hnf(&m(&[&[2, 1], &[1, 1]])), m(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn membership_examples() {
        let l = Lattice::from_matrix(&m(&[&[2, 0]]));
        assert!(member(&[Int::from(0), Int::from(0)], &l));
        assert!(!member(&[Int::from(1), Int::from(0)], &l));
        let l = Lattice::from_matrix(&m(&[&[1, 1]]));
        assert!(member(&[Int::from(3), Int::from(3)], &l));
    }

    #[test]
    fn equality_and_unimodularity() {
        let a = Lattice::from_matrix(&m(&[&[1, 2, 3], &[0, 4, 5]]));
        let b = Lattice::from_matrix(&m(&[&[0, 4, 5], &[1, 2, 3]]));
        assert!(lattice_equal(&a, &b));
        assert!(is_unimodular_square(&IntegerMatrix::identity(3)));
        assert!(!is_unimodular_square(&m(&[&[1, 1], &[0, 2]])));
        assert_eq!(m(&[&[1, 1], &[0, 2]]).determinant(), Some(Int::from(2)));
    }

    #[test]
    fn solve_recovers_coefficients() {
        let rows = [SparseVec::from_i64(&[2, 1, 0]), SparseVec::from_i64(&[0, 3, 1])];
        let target = SparseVec::from_i64(&[4, -4, -2]);
        assert_eq!(solve(3, &rows, &target), Some(vec![Int::from(2), Int::from(-2)]));
        assert_eq!(solve(3, &rows, &SparseVec::from_i64(&[1, 0, 0])), None);
    }
}
