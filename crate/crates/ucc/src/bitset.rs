//! Fixed-width bitsets over dense 0-based index spaces.
//!
//! Every set in this crate (family member sets, adjacency rows, stable
//! sets) is a `BitSet` of a fixed width. Widths beyond 64 spill into
//! additional words, so the same type serves one-word graphs and larger
//! closures alike. Unused high bits of the last word are kept zero.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    width: usize,
    words: Vec<u64>,
}

#[inline]
fn words_for(width: usize) -> usize {
    width.div_ceil(WORD_BITS)
}

impl BitSet {
    /// Empty set over `width` indices.
    pub fn new(width: usize) -> Self {
        BitSet {
            width,
            words: vec![0; words_for(width)],
        }
    }

    /// Set containing every index below `width`.
    pub fn full(width: usize) -> Self {
        let mut s = BitSet::new(width);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.mask_tail();
        s
    }

    /// Builds a set from indices; panics if any index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut s = BitSet::new(width);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Interprets the low `width` bits of `word` as a set (width <= 64).
    pub fn from_word(width: usize, word: u64) -> Self {
        assert!(width <= WORD_BITS);
        let mut s = BitSet::new(width);
        if width > 0 {
            s.words[0] = word;
        }
        s.mask_tail();
        s
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width, "index {i} out of range for width {}", self.width);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.width, "index {i} out of range for width {}", self.width);
        self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / WORD_BITS] & (1u64 << (i % WORD_BITS)) != 0
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.width, other.width);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.width, other.width);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    /// Complement within the width.
    pub fn complement(&self) -> BitSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterates set indices in ascending order.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            set: self,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.ones().collect()
    }

    fn mask_tail(&mut self) {
        let used = self.width % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.width == 0 {
            self.words.clear();
        }
    }

    /// Numeric comparison: the set is read as an integer with index `i`
    /// contributing weight 2^i. Gives the canonical ordering used for
    /// reproducible output.
    pub fn value_cmp(&self, other: &BitSet) -> Ordering {
        let n = self.words.len().max(other.words.len());
        for k in (0..n).rev() {
            let a = self.words.get(k).copied().unwrap_or(0);
            let b = other.words.get(k).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.width.cmp(&other.width)
    }
}

pub struct Ones<'a> {
    set: &'a BitSet,
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.set.words.len() {
                return None;
            }
            self.current = self.set.words[self.word_idx];
        }
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value_cmp(other)
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.ones().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_remove() {
        let mut s = BitSet::new(70);
        s.insert(0);
        s.insert(63);
        s.insert(69);
        assert!(s.contains(0) && s.contains(63) && s.contains(69));
        assert!(!s.contains(1));
        assert_eq!(s.count(), 3);
        s.remove(63);
        assert!(!s.contains(63));
        assert_eq!(s.to_indices(), vec![0, 69]);
    }

    #[test]
    fn complement_respects_width() {
        let s = BitSet::from_indices(5, [0, 2]);
        assert_eq!(s.complement().to_indices(), vec![1, 3, 4]);
        assert_eq!(BitSet::new(0).complement().count(), 0);
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_indices(8, [1, 2, 3]);
        let b = BitSet::from_indices(8, [3, 4]);
        assert_eq!(a.union(&b).to_indices(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_indices(), vec![3]);
        assert_eq!(a.difference(&b).to_indices(), vec![1, 2]);
        assert!(!a.is_disjoint(&b));
        assert!(a.intersection(&b).is_subset(&a));
    }

    #[test]
    fn value_ordering_is_numeric() {
        let a = BitSet::from_indices(8, [0, 1]); // value 3
        let b = BitSet::from_indices(8, [2]); // value 4
        assert!(a < b);
        let c = BitSet::from_indices(130, [129]);
        let d = BitSet::from_indices(130, [0, 64]);
        assert!(d < c);
    }

    #[test]
    fn full_and_empty() {
        let f = BitSet::full(67);
        assert_eq!(f.count(), 67);
        assert!(BitSet::new(3).is_empty());
        assert_eq!(f.first(), Some(0));
        assert_eq!(BitSet::new(3).first(), None);
    }
}
