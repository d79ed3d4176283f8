//! Type-A_∞ root data, weight words, root partitions and symmetric-group
//! combinatorics.
//!
//! Permutations compose as functions on strand positions: `(u * v)(k) =
//! u(v(k))`, and the word `s_{r_1} ... s_{r_m}` denotes the composite
//! `s_{r_1} ∘ ... ∘ s_{r_m}`. A permutation acts on a word by place
//! permutation, `(w·i)_{w(k)} = i_k`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KlrError, Result};
use crate::qseries::QSeries;
use crate::int::Int;
use crate::MAX_STRANDS;

/// Cartan matrix entry of type A_∞.
pub fn cartan(i: i32, j: i32) -> i32 {
    match (i - j).abs() {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// An element of the positive root lattice: vertex -> multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootVector(BTreeMap<i32, u32>);

impl RootVector {
    pub fn zero() -> Self {
        RootVector(BTreeMap::new())
    }

    pub fn simple(i: i32) -> Self {
        Self::from_pairs([(i, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in pairs {
            *map.entry(i).or_insert(0) += c;
        }
        map.retain(|_, c| *c > 0);
        RootVector(map)
    }

    /// Content of a word.
    pub fn of_letters(letters: &[i32]) -> Self {
        Self::from_pairs(letters.iter().map(|&i| (i, 1)))
    }

    /// Parses `1:2,2:1` (vertex:multiplicity pairs).
    pub fn parse(src: &str) -> Result<Self> {
        let bad = || KlrError::InvalidArgument(format!("cannot parse root vector {src:?}; expected e.g. 1:2,2:1"));
        if src.trim().is_empty() {
            return Ok(Self::zero());
        }
        let mut pairs = Vec::new();
        for item in src.split(',') {
            let (v, c) = item.split_once(':').ok_or_else(bad)?;
            let v: i32 = v.trim().parse().map_err(|_| bad())?;
            let c: u32 = c.trim().parse().map_err(|_| bad())?;
            pairs.push((v, c));
        }
        Ok(Self::from_pairs(pairs))
    }

    pub fn height(&self) -> usize {
        self.0.values().map(|&c| c as usize).sum()
    }

    pub fn multiplicity(&self, i: i32) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.0.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.0.iter().map(|(&i, &c)| (i, c))
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        Self::from_pairs(self.entries().chain(other.entries()))
    }

    pub fn scale(&self, p: u32) -> RootVector {
        Self::from_pairs(self.entries().map(|(i, c)| (i, c * p)))
    }

    /// Componentwise `self <= other`.
    pub fn fits_in(&self, other: &RootVector) -> bool {
        self.entries().all(|(i, c)| other.multiplicity(i) >= c)
    }

    pub fn checked_sub(&self, other: &RootVector) -> Option<RootVector> {
        if !other.fits_in(self) {
            return None;
        }
        let mut map = self.0.clone();
        for (i, c) in other.entries() {
            *map.get_mut(&i).unwrap() -= c;
        }
        map.retain(|_, c| *c > 0);
        Some(RootVector(map))
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().map(|(i, c)| format!("{i}:{c}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A word `(i_1, ..., i_d)` of vertex labels, stored inline.
///
/// Ordering is lexicographic with a proper prefix sorting first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    len: u8,
    letters: [i32; MAX_STRANDS],
}

impl Word {
    pub fn new(letters: &[i32]) -> Result<Self> {
        if letters.len() > MAX_STRANDS {
            return Err(KlrError::TooManyStrands(letters.len()));
        }
        let mut buf = [0; MAX_STRANDS];
        buf[..letters.len()].copy_from_slice(letters);
        Ok(Word { len: letters.len() as u8, letters: buf })
    }

    pub fn empty() -> Self {
        Word { len: 0, letters: [0; MAX_STRANDS] }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Letter at 1-based position `r`.
    pub fn at(&self, r: usize) -> i32 {
        self.letters[r - 1]
    }

    pub fn content(&self) -> RootVector {
        RootVector::of_letters(self.letters())
    }

    /// `s_r · i` for 1-based `r`.
    pub fn swapped(&self, r: usize) -> Word {
        let mut out = *self;
        out.letters.swap(r - 1, r);
        out
    }

    /// Place permutation `w · i`.
    pub fn permuted(&self, w: &Permutation) -> Word {
        debug_assert_eq!(w.len(), self.len());
        let mut out = *self;
        for k in 0..self.len() {
            out.letters[w.img[k] as usize] = self.letters[k];
        }
        out
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut v = self.letters().to_vec();
        v.extend_from_slice(other.letters());
        Word::new(&v)
    }

    /// The `len` letters starting at 0-based `start`.
    pub fn slice(&self, start: usize, len: usize) -> Word {
        Word::new(&self.letters()[start..start + len]).unwrap()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_words(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters().iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters().serialize(s)
    }
}

/// Lexicographic comparison; a proper prefix precedes the longer word.
pub fn compare_words(u: &Word, v: &Word) -> Ordering {
    u.letters().cmp(v.letters())
}

/// All words with content `alpha`, lexicographically descending.
pub fn words_of(alpha: &RootVector) -> Result<Vec<Word>> {
    let d = alpha.height();
    if d > MAX_STRANDS {
        return Err(KlrError::TooManyStrands(d));
    }
    let mut letters: Vec<i32> = alpha.entries().flat_map(|(i, c)| std::iter::repeat(i).take(c as usize)).collect();
    letters.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![Word::new(&letters)?];
    // Previous permutation in lexicographic order, starting from the largest.
    loop {
        let Some(k) = (0..letters.len().saturating_sub(1)).rev().find(|&k| letters[k] > letters[k + 1]) else {
            break;
        };
        let l = (k + 1..letters.len()).rev().find(|&l| letters[l] < letters[k]).unwrap();
        letters.swap(k, l);
        letters[k + 1..].reverse();
        out.push(Word::new(&letters)?);
    }
    Ok(out)
}

/// The positive root `α(m, n) = α_m + ... + α_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub m: i32,
    pub n: i32,
}

impl PositiveRoot {
    pub fn new(m: i32, n: i32) -> Result<Self> {
        if m > n {
            return Err(KlrError::InvalidArgument(format!("positive root needs m <= n, got ({m}..{n})")));
        }
        Ok(PositiveRoot { m, n })
    }

    pub fn height(&self) -> usize {
        (self.n - self.m + 1) as usize
    }

    pub fn word(&self) -> Word {
        let letters: Vec<i32> = (self.m..=self.n).collect();
        Word::new(&letters).expect("root longer than the strand limit")
    }

    pub fn root_vector(&self) -> RootVector {
        RootVector::from_pairs((self.m..=self.n).map(|i| (i, 1)))
    }
}

impl Ord for PositiveRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on (m, m+1, ..., n) with prefix smaller.
        self.m.cmp(&other.m).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for PositiveRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}..{})", self.m, self.n)
    }
}

/// Nonzero root vectors of height `<= max_height` supported on `vertices`.
pub fn root_vectors_up_to(max_height: usize, vertices: &[i32]) -> Vec<RootVector> {
    let mut out = vec![RootVector::zero()];
    for &v in vertices {
        out = out
            .into_iter()
            .flat_map(|a| {
                let room = max_height - a.height();
                (0..=room as u32).map(move |c| a.add(&RootVector::from_pairs([(v, c)])))
            })
            .collect();
    }
    out.retain(|a| a.height() > 0);
    out.sort_by_key(|a| (a.height(), a.clone()));
    out
}

/// Positive roots `β` with `β <= alpha` componentwise, in descending root order.
pub fn positive_roots_below(alpha: &RootVector) -> Vec<PositiveRoot> {
    let mut roots = Vec::new();
    for m in alpha.support() {
        let mut n = m;
        while alpha.multiplicity(n) > 0 {
            roots.push(PositiveRoot { m, n });
            n += 1;
        }
    }
    roots.sort_by(|a, b| b.cmp(a));
    roots
}

/// An ordered sum `p_1 β_1 + ... + p_N β_N` with `β_1 > ... > β_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootPartition {
    parts: Vec<(PositiveRoot, u32)>,
}

impl RootPartition {
    pub fn new(parts: Vec<(PositiveRoot, u32)>) -> Result<Self> {
        if parts.iter().any(|&(_, p)| p == 0) {
            return Err(KlrError::InvalidArgument("root partition multiplicities must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(KlrError::InvalidArgument("root partition roots must strictly decrease".into()));
        }
        Ok(RootPartition { parts })
    }

    pub fn parts(&self) -> &[(PositiveRoot, u32)] {
        &self.parts
    }

    pub fn alpha(&self) -> RootVector {
        self.parts.iter().fold(RootVector::zero(), |acc, (b, p)| acc.add(&b.root_vector().scale(*p)))
    }

    pub fn height(&self) -> usize {
        self.parts.iter().map(|(b, p)| b.height() * *p as usize).sum()
    }

    /// The dominant word `i_π`.
    pub fn word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.height());
        for (b, p) in &self.parts {
            for _ in 0..*p {
                letters.extend(b.word().letters());
            }
        }
        Word::new(&letters).expect("root partition longer than the strand limit")
    }

    /// `Σ p_k (p_k - 1) / 2`.
    pub fn sh(&self) -> i64 {
        self.parts.iter().map(|&(_, p)| (p as i64) * (p as i64 - 1) / 2).sum()
    }

    /// Sizes of the π-blocks, left to right.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.parts.iter().flat_map(|&(b, p)| std::iter::repeat(b.height()).take(p as usize)).collect()
    }

    /// 0-based index of the first strand of the `k`-th part (root group).
    pub fn part_offset(&self, k: usize) -> usize {
        self.parts[..k].iter().map(|(b, p)| b.height() * *p as usize).sum()
    }
}

impl Ord for RootPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word().cmp(&other.word())
    }
}

impl PartialOrd for RootPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(b, p)| format!("{b}^{p}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All root partitions of `alpha`, in descending order of `i_π`.
pub fn root_partitions(alpha: &RootVector) -> Result<Vec<RootPartition>> {
    if alpha.height() > MAX_STRANDS {
        return Err(KlrError::TooManyStrands(alpha.height()));
    }
    fn descend(
        rest: &RootVector,
        roots: &[PositiveRoot],
        acc: &mut Vec<(PositiveRoot, u32)>,
        out: &mut Vec<RootPartition>,
    ) {
        if rest.height() == 0 {
            out.push(RootPartition { parts: acc.clone() });
            return;
        }
        for (k, &beta) in roots.iter().enumerate() {
            let bv = beta.root_vector();
            let mut p = 1;
            while let Some(left) = rest.checked_sub(&bv.scale(p)) {
                acc.push((beta, p));
                descend(&left, &roots[k + 1..], acc, out);
                acc.pop();
                p += 1;
            }
        }
    }
    let roots = positive_roots_below(alpha);
    let mut out = Vec::new();
    if alpha.height() > 0 {
        descend(alpha, &roots, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// A permutation of `{1..d}`, stored 0-based inline.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    len: u8,
    img: [u8; MAX_STRANDS],
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        assert!(d <= MAX_STRANDS, "too many strands: {d}");
        let mut img = [0; MAX_STRANDS];
        for (k, slot) in img.iter_mut().enumerate() {
            *slot = k as u8;
        }
        Permutation { len: d as u8, img }
    }

    /// Builds from 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let d = one_line.len();
        if d > MAX_STRANDS {
            return Err(KlrError::TooManyStrands(d));
        }
        let mut seen = [false; MAX_STRANDS];
        let mut img = [0; MAX_STRANDS];
        for (k, &v) in one_line.iter().enumerate() {
            if v == 0 || v > d || seen[v - 1] {
                return Err(KlrError::InvalidArgument(format!("{one_line:?} is not a permutation")));
            }
            seen[v - 1] = true;
            img[k] = (v - 1) as u8;
        }
        for slot in img.iter_mut().skip(d) {
            *slot = 0;
        }
        let mut p = Permutation { len: d as u8, img };
        for k in d..MAX_STRANDS {
            p.img[k] = k as u8;
        }
        Ok(p)
    }

    /// The simple transposition `s_r` (1-based) in `S_d`.
    pub fn simple(r: usize, d: usize) -> Self {
        assert!(r >= 1 && r < d);
        let mut p = Self::identity(d);
        p.img.swap(r - 1, r);
        p
    }

    /// `s_{r_1} ∘ ... ∘ s_{r_m}`.
    pub fn from_word(word: &[usize], d: usize) -> Self {
        let mut p = Self::identity(d);
        for &r in word.iter().rev() {
            p = Self::simple(r, d).compose(&p);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images().iter().map(|&v| v as usize + 1).collect()
    }

    /// 0-based images.
    pub fn images(&self) -> &[u8] {
        &self.img[..self.len()]
    }

    /// Image of 0-based position `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.img[k] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len, other.len);
        let mut out = *self;
        for k in 0..self.len() {
            out.img[k] = self.img[other.img[k] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = *self;
        for k in 0..self.len() {
            out.img[self.img[k] as usize] = k as u8;
        }
        out
    }

    /// Pairs `(k, l)` of 0-based positions with `k < l` and `w(k) > w(l)`.
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let d = self.len();
        (0..d).flat_map(move |k| (k + 1..d).filter(move |&l| self.img[k] > self.img[l]).map(move |l| (k, l)))
    }

    /// Coxeter length (inversion count).
    pub fn length(&self) -> usize {
        self.inversions().count()
    }

    /// Whether `ℓ(s_r w) < ℓ(w)` for 1-based `r`.
    pub fn has_left_descent(&self, r: usize) -> bool {
        let inv = self.inverse();
        inv.img[r - 1] > inv.img[r]
    }

    /// Whether `ℓ(w s_r) < ℓ(w)` for 1-based `r`.
    pub fn has_right_descent(&self, r: usize) -> bool {
        self.img[r - 1] > self.img[r]
    }

    /// The longest element of `S_d`.
    pub fn longest(d: usize) -> Self {
        let v: Vec<usize> = (1..=d).rev().collect();
        Self::from_one_line(&v).unwrap()
    }

    /// Every element of `S_d`, in lexicographic one-line order.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=d).collect();
        let mut out = vec![Self::from_one_line(&cur).unwrap()];
        loop {
            let Some(k) = (0..d.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
                break;
            };
            let l = (k + 1..d).rev().find(|&l| cur[l] > cur[k]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
            out.push(Self::from_one_line(&cur).unwrap());
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

/// Lexicographically least reduced word (1-based letters).
pub fn canonical_reduced_word(w: &Permutation) -> Vec<usize> {
    let d = w.len();
    let mut cur = *w;
    let mut word = Vec::with_capacity(cur.length());
    while let Some(r) = (1..d).find(|&r| cur.has_left_descent(r)) {
        word.push(r);
        cur = Permutation::simple(r, d).compose(&cur);
    }
    word
}

pub fn is_reduced_word(word: &[usize], d: usize) -> bool {
    word.iter().all(|&r| r >= 1 && r < d) && Permutation::from_word(word, d).length() == word.len()
}

/// `S_d` elements increasing on every block of consecutive positions with
/// the given sizes: the minimal length left coset representatives of the
/// Young subgroup.
pub fn min_coset_reps_for_blocks(block_sizes: &[usize]) -> Vec<Permutation> {
    let d: usize = block_sizes.iter().sum();
    let same_block = block_boundaries(block_sizes);
    Permutation::all(d)
        .into_iter()
        .filter(|w| (0..d.saturating_sub(1)).all(|k| !same_block[k] || w.apply(k) < w.apply(k + 1)))
        .collect()
}

/// `same_block[k]` says whether positions `k` and `k + 1` share a block.
fn block_boundaries(block_sizes: &[usize]) -> Vec<bool> {
    let d: usize = block_sizes.iter().sum();
    let mut same = vec![true; d.saturating_sub(1)];
    let mut pos = 0;
    for &b in block_sizes {
        pos += b;
        if pos < d {
            same[pos - 1] = false;
        }
    }
    same
}

pub fn min_coset_reps(pi: &RootPartition) -> Vec<Permutation> {
    min_coset_reps_for_blocks(&pi.block_sizes())
}

/// Elements of the Young subgroup `S_π`.
pub fn young_subgroup(block_sizes: &[usize]) -> Vec<Permutation> {
    let d: usize = block_sizes.iter().sum();
    let mut starts = Vec::new();
    let mut pos = 0;
    for &b in block_sizes {
        starts.push((pos, b));
        pos += b;
    }
    Permutation::all(d)
        .into_iter()
        .filter(|w| starts.iter().all(|&(s, b)| (s..s + b).all(|k| (s..s + b).contains(&w.apply(k)))))
        .collect()
}

/// Factorizes `w = w^π ∘ w_π` with `w^π` a minimal coset representative and
/// `w_π` in the Young subgroup.
pub fn parabolic_factorize_blocks(w: &Permutation, block_sizes: &[usize]) -> (Permutation, Permutation) {
    let mut rep = *w;
    let mut pos = 0;
    for &b in block_sizes {
        let mut vals: Vec<u8> = (pos..pos + b).map(|k| w.img[k]).collect();
        vals.sort_unstable();
        rep.img[pos..pos + b].copy_from_slice(&vals);
        pos += b;
    }
    let inner = rep.inverse().compose(w);
    (rep, inner)
}

pub fn parabolic_factorize(w: &Permutation, pi: &RootPartition) -> (Permutation, Permutation) {
    parabolic_factorize_blocks(w, &pi.block_sizes())
}

/// A single rewriting step between reduced words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WordMove {
    /// Swap the commuting letters at 0-based positions `p, p + 1`.
    Commute(usize),
    /// Replace `r r' r` at 0-based positions `p..p + 3` with `r' r r'`.
    Braid(usize),
}

impl WordMove {
    pub fn apply(&self, word: &mut [usize]) {
        match *self {
            WordMove::Commute(p) => word.swap(p, p + 1),
            WordMove::Braid(p) => {
                let (a, b) = (word[p], word[p + 1]);
                word[p] = b;
                word[p + 1] = a;
                word[p + 2] = b;
            }
        }
    }
}

fn word_neighbors(word: &[usize], braids: bool) -> impl Iterator<Item = WordMove> + '_ {
    let n = word.len();
    (0..n.saturating_sub(1)).flat_map(move |p| {
        let commute = (word[p].abs_diff(word[p + 1]) > 1).then_some(WordMove::Commute(p));
        let braid = (braids && p + 2 < n && word[p] == word[p + 2] && word[p].abs_diff(word[p + 1]) == 1)
            .then_some(WordMove::Braid(p));
        commute.into_iter().chain(braid)
    })
}

fn bfs_path(from: &[usize], to: &[usize], braids: bool) -> Option<Vec<WordMove>> {
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, WordMove)>> = HashMap::new();
    parent.insert(from.to_vec(), None);
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        if cur == to {
            let mut moves = Vec::new();
            let mut node = cur;
            while let Some(Some((prev, mv))) = parent.get(&node).cloned() {
                moves.push(mv);
                node = prev;
            }
            moves.reverse();
            return Some(moves);
        }
        for mv in word_neighbors(&cur, braids).collect::<Vec<_>>() {
            let mut next = cur.clone();
            mv.apply(&mut next);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), mv)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Moves `word[start..]` to a word beginning with `c`, which must be a left
/// descent of the permutation it spells. Only `word[start..]` changes.
fn bring_to_front(word: &mut [usize], start: usize, c: usize, moves: &mut Vec<WordMove>) {
    let a = word[start];
    if a == c {
        return;
    }
    if a.abs_diff(c) > 1 {
        bring_to_front(word, start + 1, c, moves);
        let mv = WordMove::Commute(start);
        mv.apply(word);
        moves.push(mv);
    } else {
        // Both a and c are left descents, so the suffix after `a` starts
        // with c a once rearranged, and a c a becomes c a c.
        bring_to_front(word, start + 1, c, moves);
        bring_to_front(word, start + 2, a, moves);
        let mv = WordMove::Braid(start);
        mv.apply(word);
        moves.push(mv);
    }
}

fn spelled(word: &[usize]) -> Permutation {
    let d = word.iter().copied().max().map_or(1, |m| m + 1);
    Permutation::from_word(word, d)
}

/// Moves turning a reduced word into the canonical word of its permutation,
/// starting the canonical part at `from` (earlier letters are left alone).
fn canonicalize_from(word: &mut [usize], from: usize, moves: &mut Vec<WordMove>) {
    for p in from..word.len() {
        let rest = spelled(&word[p..]);
        let c = (1..rest.len()).find(|&r| rest.has_left_descent(r)).expect("reduced word has a left descent");
        bring_to_front(word, p, c, moves);
    }
}

/// Moves from a reduced word to the canonical reduced word of the same
/// permutation.
pub fn path_to_canonical(word: &[usize]) -> Result<Vec<WordMove>> {
    if !is_reduced_word(word, spelled(word).len()) {
        return Err(KlrError::NotReduced(word.to_vec()));
    }
    let mut cur = word.to_vec();
    let mut moves = Vec::new();
    canonicalize_from(&mut cur, 0, &mut moves);
    Ok(moves)
}

/// Moves from a reduced word of `w` to `r` followed by the canonical word of
/// `s_r w`; `r` must be a left descent of `w`.
pub fn path_to_leading(word: &[usize], r: usize) -> Result<Vec<WordMove>> {
    let w = spelled(word);
    if !is_reduced_word(word, w.len()) {
        return Err(KlrError::NotReduced(word.to_vec()));
    }
    if r == 0 || r >= w.len() || !w.has_left_descent(r) {
        return Err(KlrError::InvalidArgument(format!("{r} is not a left descent of {word:?}")));
    }
    let mut cur = word.to_vec();
    let mut moves = Vec::new();
    bring_to_front(&mut cur, 0, r, &mut moves);
    canonicalize_from(&mut cur, 1, &mut moves);
    Ok(moves)
}

/// Braid and commutation moves turning one reduced word into another.
///
/// Both words are routed through the canonical word; moves are their own
/// inverses once applied to the word they produced.
pub fn reduced_word_path(r1: &[usize], r2: &[usize]) -> Result<Vec<WordMove>> {
    let d = r1.iter().chain(r2).copied().max().map_or(1, |m| m + 1);
    if !is_reduced_word(r1, d) {
        return Err(KlrError::NotReduced(r1.to_vec()));
    }
    if !is_reduced_word(r2, d) || Permutation::from_word(r1, d) != Permutation::from_word(r2, d) {
        return Err(KlrError::NotReduced(r2.to_vec()));
    }
    if r1 == r2 {
        return Ok(Vec::new());
    }
    let mut moves = path_to_canonical(r1)?;
    let back = path_to_canonical(r2)?;
    moves.extend(back.into_iter().rev());
    Ok(moves)
}

/// Shortest path by breadth-first search; `braids = false` restricts to
/// commutation moves. Exponential, meant for small words.
pub fn bfs_word_path(from: &[usize], to: &[usize], braids: bool) -> Option<Vec<WordMove>> {
    bfs_path(from, to, braids)
}

/// Whether two words are related by commutation moves alone: their
/// restrictions to every pair of non-commuting letters agree.
pub fn commutation_equivalent(u: &[usize], v: &[usize]) -> bool {
    let mut lu = u.to_vec();
    let mut lv = v.to_vec();
    lu.sort_unstable();
    lv.sort_unstable();
    if lu != lv {
        return false;
    }
    lu.dedup();
    lu.iter().all(|&a| {
        let keep = |x: &&usize| **x == a || **x == a + 1;
        u.iter().filter(keep).eq(v.iter().filter(keep))
    })
}

/// A reduced word for the longest element of `S_a` whose reverse lies in
/// its commutation class.
pub fn symmetric_w0_word(a: usize) -> Result<Vec<usize>> {
    if a == 0 {
        return Err(KlrError::InvalidArgument("symmetric_w0_word needs a >= 1".into()));
    }
    // Staircase (1)(2 1)(3 2 1)...(a-1 ... 1).
    let word: Vec<usize> = (1..a).flat_map(|k| (1..=k).rev()).collect();
    let reversed: Vec<usize> = word.iter().rev().copied().collect();
    if !is_reduced_word(&word, a.max(2)) || Permutation::from_word(&word, a) != Permutation::longest(a) {
        return Err(KlrError::ConstructionFailed(format!("staircase word {word:?} is not reduced for w_0")));
    }
    if !commutation_equivalent(&word, &reversed) {
        return Err(KlrError::ConstructionFailed(format!(
            "reverse of {word:?} is not reachable by commutation moves"
        )));
    }
    Ok(word)
}

/// `Σ_{w ∈ S_a} t^{ℓ(w)}` via `∏_{r=1}^{a} (1 + t + ... + t^{r-1})`.
pub fn poincare(a: usize, cutoff: i64) -> Result<QSeries> {
    if a == 0 {
        return Err(KlrError::InvalidArgument("poincare needs a >= 1".into()));
    }
    let big = cutoff.max((a * (a - 1) / 2) as i64);
    let mut acc = QSeries::one(big);
    for r in 1..=a as i64 {
        let factor = QSeries::from_coeffs(0, big, (0..r).map(|e| (e, Int::from(1))));
        acc = acc.mul(&factor);
    }
    Ok(acc.truncate(cutoff))
}

/// `Σ_{w ∈ S_a} t^{ℓ(w)}` by enumerating the group.
pub fn poincare_brute(a: usize, cutoff: i64) -> QSeries {
    let terms = Permutation::all(a).into_iter().map(|w| (w.length() as i64, Int::from(1)));
    QSeries::from_coeffs(0, cutoff, terms)
}
