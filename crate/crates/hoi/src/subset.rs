//! Bit-set over variable indices.
//!
//! All of the index algebra in this crate — "the system without variable i",
//! "every subset of γ", "the pair {i, j}" — is carried by [`SubsetMask`], a
//! `Copy` bit-set over variable indices `0..64`.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A set of variable indices, backed by a `u64` bit-set.
///
/// Variable `i` is a member iff bit `i` is set. Masks are plain values;
/// whether a mask is valid for a given system (`all set bits < n_vars`) is
/// checked by the consumer, e.g. [`crate::measures::EntropyCache`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(u64);

impl SubsetMask {
    /// Largest supported variable index plus one.
    pub const MAX_VARS: usize = 64;

    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The set {0, 1, ..., n_vars-1}.
    pub fn full(n_vars: usize) -> Self {
        assert!(n_vars <= Self::MAX_VARS, "at most 64 variables supported");
        if n_vars == Self::MAX_VARS {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n_vars) - 1)
        }
    }

    /// The singleton {i}.
    pub fn single(i: usize) -> Self {
        assert!(i < Self::MAX_VARS);
        SubsetMask(1u64 << i)
    }

    pub fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < Self::MAX_VARS && self.0 & (1u64 << i) != 0
    }

    /// Self with variable `i` added.
    pub fn with(self, i: usize) -> Self {
        assert!(i < Self::MAX_VARS);
        SubsetMask(self.0 | (1u64 << i))
    }

    /// Self with variable `i` removed.
    pub fn without(self, i: usize) -> Self {
        assert!(i < Self::MAX_VARS);
        SubsetMask(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    /// Members of self that are not in `other`.
    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every member is a valid index for a system of `n_vars` variables.
    pub fn valid_for(self, n_vars: usize) -> bool {
        self.is_subset_of(Self::full(n_vars.min(Self::MAX_VARS))) && n_vars <= Self::MAX_VARS
    }

    /// Member indices in ascending order.
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

    /// All 2^|self| subsets of self, the empty set first, self last.
    ///
    /// Enumeration order is deterministic: the classic `(sub - 1) & mask`
    /// descent, reversed so it ascends.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let mask = self.0;
        let mut sub: u64 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let current = SubsetMask(sub);
            if sub == mask {
                done = true;
            } else {
                sub = (sub.wrapping_sub(mask)) & mask;
            }
            Some(current)
        })
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut mask = SubsetMask::EMPTY;
        for i in iter {
            mask = mask.with(i);
        }
        mask
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetMask{self}")
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = SubsetMask::from_iter([0, 2, 5]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(2));
        assert!(!a.contains(1));
        assert_eq!(a.without(2), SubsetMask::from_iter([0, 5]));
        assert_eq!(a.with(1).len(), 4);
        assert!(a.is_subset_of(SubsetMask::full(6)));
        assert!(!a.is_subset_of(SubsetMask::full(5)));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(format!("{a}"), "{0,2,5}");
    }

    #[test]
    fn subset_enumeration_covers_the_lattice() {
        let gamma = SubsetMask::from_iter([1, 3, 4]);
        let subs: Vec<_> = gamma.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], SubsetMask::EMPTY);
        assert_eq!(*subs.last().unwrap(), gamma);
        for s in &subs {
            assert!(s.is_subset_of(gamma));
        }
        let unique: std::collections::HashSet<_> = subs.iter().copied().collect();
        assert_eq!(unique.len(), 8);
    }

    #[test]
    fn full_mask_at_the_word_boundary() {
        assert_eq!(SubsetMask::full(64).len(), 64);
        assert_eq!(SubsetMask::full(0), SubsetMask::EMPTY);
    }
}
