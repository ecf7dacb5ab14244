//! Fixed-capacity bit sets used for adjacency rows and vertex sets.

use std::fmt;

/// A set of vertex ids below a fixed capacity, stored as packed 64-bit words.
///
/// Every adjacency row of a [`crate::graph::Graph`] is a `VertexSet`, as is
/// every member of a [`crate::set_system::SetSystem`]. The derived `Ord` is an
/// arbitrary but stable total order used only for deterministic sorting.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    nbits: usize,
    words: Vec<u64>,
}

impl VertexSet {
    /// The empty set over a universe of `nbits` ids.
    pub fn empty(nbits: usize) -> Self {
        Self {
            nbits,
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    /// Builds a set from an iterator of ids.
    ///
    /// # Panics
    /// Panics if any id is `>= nbits`.
    pub fn from_ids<I: IntoIterator<Item = usize>>(nbits: usize, ids: I) -> Self {
        let mut s = Self::empty(nbits);
        for i in ids {
            s.insert(i);
        }
        s
    }

    /// The full set `{0, .., nbits-1}`.
    pub fn full(nbits: usize) -> Self {
        let mut s = Self::empty(nbits);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s
    }

    fn clear_tail(&mut self) {
        let tail = self.nbits % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// Universe capacity this set was created with.
    pub fn capacity(&self) -> usize {
        self.nbits
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.nbits, "id {i} out of capacity {}", self.nbits);
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.nbits, "id {i} out of capacity {}", self.nbits);
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.nbits && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Number of ids in the set.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Iterates ids in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Ids in ascending order.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.nbits, other.nbits);
        Self {
            nbits: self.nbits,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.nbits, other.nbits);
        Self {
            nbits: self.nbits,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!(self.nbits, other.nbits);
        Self {
            nbits: self.nbits,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Raw packed words, little-endian by id.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some((self.word_idx << 6) | bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_roundtrip() {
        let ids = [0usize, 3, 63, 64, 65, 199];
        let s = VertexSet::from_ids(200, ids.iter().copied());
        assert_eq!(s.to_vec(), ids);
        assert_eq!(s.len(), ids.len());
        assert!(s.contains(64));
        assert!(!s.contains(62));
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_ids(100, [1, 2, 70]);
        let b = VertexSet::from_ids(100, [2, 70, 99]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2, 70]);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 70, 99]);
        assert_eq!(a.difference(&b).to_vec(), vec![1]);
        assert!(a.intersection(&b).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }

    #[test]
    fn full_respects_capacity() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(!s.contains(70));
    }

    #[test]
    fn empty_set() {
        let s = VertexSet::empty(10);
        assert!(s.is_empty());
        assert_eq!(s.iter().count(), 0);
    }
}
