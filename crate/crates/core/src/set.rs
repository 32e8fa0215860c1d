//! Subsets of a small ground set `{0, .., n-1}` packed into a `u32`.
//!
//! Elements are zero-based internally. Text and JSON forms are one-based.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on ground set size.
pub const MAX_GROUND: usize = 16;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(pub u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            ElementSet(u32::MAX)
        } else {
            ElementSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        ElementSet(1 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        ElementSet(elems.into_iter().fold(0u32, |m, e| m | (1 << e)))
    }

    /// Builds a set from one-based labels.
    pub fn from_one_based(elems: &[usize]) -> Result<Self> {
        let mut m = 0u32;
        for &e in elems {
            if e == 0 || e > MAX_GROUND {
                return Err(Error::Parse(format!(
                    "element {e} out of range 1..={MAX_GROUND}"
                )));
            }
            m |= 1 << (e - 1);
        }
        Ok(ElementSet(m))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn insert(self, e: usize) -> Self {
        ElementSet(self.0 | 1 << e)
    }

    pub fn remove(self, e: usize) -> Self {
        ElementSet(self.0 & !(1 << e))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|e| e + 1).collect()
    }

    /// Lexicographic comparison of sorted element lists.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.to_vec().cmp(&other.to_vec())
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = ElementSet> {
        let mask = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == mask {
                None
            } else {
                Some((s.wrapping_sub(mask)) & mask)
            };
            Some(ElementSet(s))
        })
    }

    /// All `k`-element subsets of `self`, in increasing bitmask order.
    pub fn k_subsets(self, k: usize) -> Vec<ElementSet> {
        let elems = self.to_vec();
        let m = elems.len();
        if k > m {
            return Vec::new();
        }
        if k == 0 {
            return vec![ElementSet::EMPTY];
        }
        // Gosper's hack over positions in `elems`, then scatter back.
        let mut out = Vec::new();
        let mut v: u32 = (1u32 << k) - 1;
        let limit: u64 = 1u64 << m;
        while (v as u64) < limit {
            out.push(ElementSet::from_elements(
                ElementSet(v).iter().map(|i| elems[i]),
            ));
            let c = v & v.wrapping_neg();
            let r = v.wrapping_add(c);
            if r == 0 {
                break;
            }
            v = (((r ^ v) >> 2) / c) | r;
        }
        out.sort();
        out
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        Err(Error::GroundTooLarge(n))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn k_subsets_counts() {
        for n in 0..=8 {
            for k in 0..=n {
                let subs = ElementSet::full(n).k_subsets(k);
                assert_eq!(subs.len(), binom(n, k), "n={n} k={k}");
                assert!(subs.iter().all(|s| s.len() == k));
            }
        }
        assert!(ElementSet::full(3).k_subsets(4).is_empty());
    }

    #[test]
    fn k_subsets_of_sparse_mask() {
        let s = ElementSet::from_elements([1, 4, 6]);
        let subs = s.k_subsets(2);
        assert_eq!(
            subs,
            vec![
                ElementSet::from_elements([1, 4]),
                ElementSet::from_elements([1, 6]),
                ElementSet::from_elements([4, 6]),
            ]
        );
    }

    #[test]
    fn subsets_enumerates_powerset() {
        let s = ElementSet::from_elements([0, 2, 5]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset(s)));
        assert_eq!(ElementSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn one_based_round_trip() {
        let s = ElementSet::from_one_based(&[1, 3]).unwrap();
        assert_eq!(s.to_one_based(), vec![1, 3]);
        assert_eq!(format!("{s}"), "{1,3}");
        assert!(ElementSet::from_one_based(&[0]).is_err());
    }
}
