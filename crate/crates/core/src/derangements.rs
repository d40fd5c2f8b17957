//! Fixed-point-free permutations, bipartite witnesses and index sets built from them.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest size for which the full derangement list is materialized.
pub const MAX_ENUMERATED: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerangementError {
    #[error("derangements of an empty set are not defined")]
    Empty,
    #[error("enumeration is limited to r <= {MAX_ENUMERATED}, got {0}")]
    TooLarge(usize),
    #[error("a half set needs odd r >= 3, got {0}")]
    NotOdd(usize),
    #[error("adjacency matrix must be square")]
    NotSquare,
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
}

/// A permutation of `{0, .., r-1}` without fixed points, stored as its images.
/// Displays in one-line 1-based notation, e.g. `(2143)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Derangement(Vec<usize>);

impl Derangement {
    /// Wraps 0-based images; rejects non-permutations and fixed points.
    pub fn new(images: Vec<usize>) -> Result<Self, DerangementError> {
        let r = images.len();
        let mut seen = vec![false; r];
        for (i, &j) in images.iter().enumerate() {
            if j >= r || seen[j] || j == i {
                return Err(DerangementError::NotAPermutation(images));
            }
            seen[j] = true;
        }
        Ok(Self(images))
    }

    /// Parses 1-based one-line notation such as `(231)` or `231`.
    pub fn from_one_line(s: &str) -> Result<Self, DerangementError> {
        let images = s
            .trim_matches(|c| c == '(' || c == ')')
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).filter(|&d| d > 0).map(|d| d - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DerangementError::NotAPermutation(Vec::new()))?;
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of the 0-based index `i`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// 1-based images, as used in serialized output.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|j| j + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| self.0[j] == i)
    }
}

impl fmt::Display for Derangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for j in &self.0 {
            write!(f, "{}", j + 1)?;
        }
        write!(f, ")")
    }
}

impl Serialize for Derangement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(serializer)
    }
}

/// `!r` from `!r = (r-1)(!(r-1) + !(r-2))`, with `!1 = 0`, `!2 = 1`.
pub fn count_derangements(r: usize) -> Result<u128, DerangementError> {
    if r == 0 {
        return Err(DerangementError::Empty);
    }
    let (mut prev, mut cur) = (1u128, 0u128); // !0, !1
    for k in 2..=r {
        (prev, cur) = (cur, (k as u128 - 1) * (cur + prev));
    }
    Ok(cur)
}

/// Next permutation in lexicographic order, in place; false after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else { return false };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn all_permutations(r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut p: Vec<usize> = (0..r).collect();
    let mut first = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
            return Some(p.clone());
        }
        next_permutation(&mut p).then(|| p.clone())
    })
}

/// All derangements of `r` points in lexicographic order of their one-line notation.
pub fn enumerate_derangements(r: usize) -> Result<Vec<Derangement>, DerangementError> {
    if r == 0 {
        return Err(DerangementError::Empty);
    }
    if r > MAX_ENUMERATED {
        return Err(DerangementError::TooLarge(r));
    }
    Ok(all_permutations(r)
        .filter(|p| p.iter().enumerate().all(|(i, &j)| i != j))
        .map(Derangement)
        .collect())
}

/// Fixed-point-free involutions, lexicographically ordered; empty for odd `r`.
pub fn order_two_derangements(r: usize) -> Result<Vec<Derangement>, DerangementError> {
    Ok(enumerate_derangements(r)?.into_iter().filter(Derangement::is_involution).collect())
}

/// One representative per inverse pair `{s, s^-1}` of non-involutions, the
/// lexicographically smaller one, in lexicographic order.
pub fn inverse_pair_representatives(r: usize) -> Result<Vec<Derangement>, DerangementError> {
    Ok(enumerate_derangements(r)?.into_iter().filter(|s| *s < s.inverse()).collect())
}

/// Index set `D` for odd `r`: the lexicographically smaller member of each
/// inverse pair, so `|D| = !r / 2`.
pub fn pick_half_set(r: usize) -> Result<Vec<Derangement>, DerangementError> {
    if r < 3 || r % 2 == 0 {
        return Err(DerangementError::NotOdd(r));
    }
    inverse_pair_representatives(r)
}

/// Perfect matching `i -> s(i)` with `adj[i][s(i)]` true, by augmenting paths
/// explored in lowest-index order. Diagonal entries are ignored.
pub fn find_witness_matching(adj: &[Vec<bool>]) -> Result<Option<Derangement>, DerangementError> {
    let r = adj.len();
    if adj.iter().any(|row| row.len() != r) {
        return Err(DerangementError::NotSquare);
    }
    let allowed = |i: usize, j: usize| i != j && adj[i][j];
    // owner[j] = row currently matched to column j
    let mut owner: Vec<Option<usize>> = vec![None; r];

    fn augment(i: usize, r: usize, allowed: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..r {
            if !allowed(i, j) || seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].map_or(true, |k| augment(k, r, allowed, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    for i in 0..r {
        let mut seen = vec![false; r];
        if !augment(i, r, &allowed, &mut seen, &mut owner) {
            return Ok(None);
        }
    }
    let mut images = vec![0; r];
    for (j, i) in owner.iter().enumerate() {
        images[i.expect("perfect matching covers every column")] = j;
    }
    Derangement::new(images).map(Some)
}
