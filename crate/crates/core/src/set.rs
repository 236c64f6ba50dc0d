use core::fmt;

/// Largest carrier representable by an [`ElementSet`].
pub const MAX_CARRIER: usize = 64;

/// Subset of a carrier of known size, stored as a bit mask.
///
/// Ordering is by carrier size, then by mask value, which is the canonical
/// enumeration order used throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    len: u8,
    bits: u64,
}

#[inline]
pub(crate) fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        debug_assert!(len <= MAX_CARRIER);
        ElementSet { len: len as u8, bits: 0 }
    }

    pub fn full(len: usize) -> Self {
        ElementSet { len: len as u8, bits: full_mask(len) }
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        debug_assert!(i < len);
        ElementSet { len: len as u8, bits: 1 << i }
    }

    /// Bits beyond `len` are dropped.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        ElementSet { len: len as u8, bits: bits & full_mask(len) }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = Self::empty(len);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Size of the carrier, not of the set.
    #[inline]
    pub fn carrier_len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len as usize && self.bits >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len as usize);
        self.bits |= 1 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.bits &= !(1 << i);
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.len as usize)
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        ElementSet { len: self.len, bits: self.bits | other.bits }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        ElementSet { len: self.len, bits: self.bits & other.bits }
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        ElementSet { len: self.len, bits: self.bits & !other.bits }
    }

    #[inline]
    pub fn complement(self) -> Self {
        ElementSet { len: self.len, bits: !self.bits & full_mask(self.len as usize) }
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter {
        Iter { bits: self.bits }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl IntoIterator for &ElementSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter {
    bits: u64,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn full_carrier_of_64() {
        let s = ElementSet::full(64);
        assert_eq!(s.count(), 64);
        assert!(s.complement().is_empty());
        assert!(s.contains(63));
    }

    #[test]
    fn iteration_is_ascending() {
        let s = ElementSet::from_indices(10, [7, 2, 9, 0]);
        assert_eq!(s.iter().collect::<Vec<_>>(), [0, 2, 7, 9]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.complement().count(), 6);
    }
}
