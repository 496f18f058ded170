//! Fixed-width subsets of a finite ground set.

use std::fmt;

/// Hard upper bound on ground-set size imposed by the bit representation.
pub const MAX_ELEMENTS: usize = 64;

/// Subset of `{0, .., n-1}` stored as a bit vector (bit `i` set iff `i` is a member).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set too large for bit representation");
        if n == MAX_ELEMENTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 & (1u64 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1u64 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).difference(self)
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical sort key: cardinality first, then the increasing index list.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.indices())
    }

    /// All `2^n` subsets of `{0, .., n-1}` in increasing bit order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_ELEMENTS);
        (0..(1u64 << n)).map(Subset)
    }

    /// All subsets of `self` (including `∅` and `self`).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset::from_indices(iter)
    }
}

/// Sorts and deduplicates subsets into canonical order.
pub fn canonicalize(sets: &mut Vec<Subset>) {
    sets.sort_by_cached_key(|s| s.canonical_key());
    sets.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = Subset::from_indices([0, 2]);
        let b = Subset::from_indices([0, 1, 2]);
        assert!(a.is_proper_subset_of(b));
        assert!(!b.is_subset_of(a));
        assert_eq!(a.union(Subset::singleton(1)), b);
        assert_eq!(b.difference(a), Subset::singleton(1));
        assert_eq!(a.complement(3), Subset::singleton(1));
        assert_eq!(b.indices(), vec![0, 1, 2]);
        assert_eq!(format!("{a:?}"), "{0, 2}");
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = Subset::from_indices([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset_of(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![
            Subset::from_indices([1, 2]),
            Subset::from_indices([0]),
            Subset::EMPTY,
            Subset::from_indices([0, 2]),
            Subset::from_indices([0]),
        ];
        canonicalize(&mut v);
        assert_eq!(
            v,
            vec![
                Subset::EMPTY,
                Subset::from_indices([0]),
                Subset::from_indices([0, 2]),
                Subset::from_indices([1, 2]),
            ]
        );
    }
}
