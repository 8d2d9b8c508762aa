//! Fixed-universe vertex subsets stored as packed bit words.

use std::fmt;

use crate::error::{Error, Result};

/// A subset of `[0, universe)`.
///
/// Iteration is always in ascending vertex order, which is what every
/// tie-breaking rule in the crate relies on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet { universe, words: vec![0; word_count(universe)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for (i, w) in set.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(universe);
            let bits = hi - lo;
            *w = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        }
        set
    }

    /// Builds a set from vertex indices, rejecting anything outside the universe.
    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::input(format!("vertex {v} out of range for {universe} vertices")));
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Set whose members are the low bits of `mask`. Requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        let mut set = Self::empty(universe);
        if universe > 0 {
            let valid = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
            set.words[0] = mask & valid;
        }
        set
    }

    /// Low word of the set; the whole set when `universe <= 64`.
    #[inline]
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.words[v / 64] &= !(1u64 << (v % 64));
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Complement relative to the universe.
    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet::full(self.universe);
        out.difference_with(self);
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Iterates over the members of a `u64` mask in ascending order.
#[inline]
pub(crate) fn mask_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Enumerates all `k`-element submasks of the low `n` bits in increasing
/// numeric order (Gosper's hack).
pub(crate) fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    debug_assert!(n <= 63);
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << n;
    let mut s = (1u64 << k) - 1;
    while s < limit {
        if !f(s) {
            return;
        }
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_complement_across_word_boundary() {
        let full = VertexSet::full(130);
        assert_eq!(full.len(), 130);
        assert!(full.contains(129));
        assert!(!full.contains(130));
        let mut s = VertexSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        let c = s.complement();
        assert_eq!(c.len(), 127);
        assert!(c.is_disjoint(&s));
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
    }

    #[test]
    fn out_of_range_vertex_rejected() {
        assert!(VertexSet::from_vertices(4, [1, 4]).is_err());
    }

    #[test]
    fn gosper_counts_binomials() {
        let mut count = 0;
        for_each_k_subset(10, 4, |m| {
            assert_eq!(m.count_ones(), 4);
            count += 1;
            true
        });
        assert_eq!(count, 210);
        let mut zero = 0;
        for_each_k_subset(5, 0, |m| {
            assert_eq!(m, 0);
            zero += 1;
            true
        });
        assert_eq!(zero, 1);
    }
}
