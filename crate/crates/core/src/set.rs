//! Ground sets and element sets.
//!
//! Elements are dense indices `0..n`. Sets are bitmasks over a `u128`, which
//! caps the ground set at 128 elements; every exhaustive routine in this crate
//! operates far below that.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of elements in any ground set.
pub const MAX_GROUND: usize = 128;

/// A set of element indices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ElementSet(pub u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_GROUND);
        ElementSet(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut mask = 0u128;
        for i in iter {
            debug_assert!(i < MAX_GROUND);
            mask |= 1u128 << i;
        }
        ElementSet(mask)
    }

    /// Full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 & (1u128 << i) != 0
    }

    #[must_use]
    pub fn insert(self, i: usize) -> Self {
        debug_assert!(i < MAX_GROUND);
        ElementSet(self.0 | (1u128 << i))
    }

    #[must_use]
    pub fn remove(self, i: usize) -> Self {
        debug_assert!(i < MAX_GROUND);
        ElementSet(self.0 & !(1u128 << i))
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn symmetric_difference_len(self, other: Self) -> usize {
        (self.0 ^ other.0).count_ones() as usize
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let i = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `count` lowest-index elements.
    pub fn take_lowest(self, count: usize) -> Self {
        ElementSet::from_indices(self.iter().take(count))
    }

    /// Lexicographic order on the sorted index sequences, where a proper
    /// prefix sorts first (so `{0} < {0,1} < {0,2} < {1}`).
    pub fn lex_lt(self, other: Self) -> bool {
        let d = self.0 ^ other.0;
        if d == 0 {
            return false;
        }
        let m = d.trailing_zeros();
        if self.0 >> m & 1 == 1 {
            // Both agree below m and self has m: self is smaller unless it
            // extends other as a strict superset prefix.
            other.0 >> m != 0
        } else {
            other.0 >> m == 0
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An indexed ground set with optional human-readable labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::Domain(format!(
                "ground set size must be in 1..={MAX_GROUND}, got {n}"
            )));
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) if i < l.len() => l[i].clone(),
            _ => format!("e{i}"),
        }
    }
}

/// Iterates every submask of `mask`, the empty set first, `mask` last.
pub fn submasks(mask: ElementSet) -> impl Iterator<Item = ElementSet> {
    let full = mask.0;
    let mut sub = 0u128;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        sub = sub.wrapping_sub(full) & full;
        done = sub == 0;
        Some(ElementSet(out))
    })
}

/// Iterates every subset of `pool` of size exactly `size`, in an order where
/// lexicographically smaller index sequences come first.
pub fn combinations(pool: ElementSet, size: usize) -> impl Iterator<Item = ElementSet> {
    let elems: Vec<usize> = pool.to_vec();
    let n = elems.len();
    let mut idx: Vec<usize> = (0..size).collect();
    let mut first = true;
    let mut exhausted = size > n;
    std::iter::from_fn(move || {
        if exhausted {
            return None;
        }
        if first {
            first = false;
        } else {
            // advance the rightmost index that can still move
            let mut i = size;
            loop {
                if i == 0 {
                    exhausted = true;
                    return None;
                }
                i -= 1;
                if idx[i] != i + n - size {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
        Some(ElementSet::from_indices(idx.iter().map(|&i| elems[i])))
    })
}

/// Iterates every subset of `pool` with at most `max_size` elements, sizes
/// ascending, each size in the order of [`combinations`].
pub fn subsets_up_to(pool: ElementSet, max_size: usize) -> impl Iterator<Item = ElementSet> {
    let cap = max_size.min(pool.len());
    (0..=cap).flat_map(move |s| combinations(pool, s))
}

/// Number of subsets of an `n`-element pool with at most `k` elements,
/// saturating at `u64::MAX`.
pub fn count_subsets_up_to(n: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut c: u64 = 1; // C(n, 0)
    for s in 0..=k.min(n) {
        total = total.saturating_add(c);
        if s < n {
            c = match c
                .checked_mul((n - s) as u64)
                .map(|v| v / (s as u64 + 1))
            {
                Some(v) => v,
                None => return u64::MAX,
            };
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_basics() {
        let s = ElementSet::from_indices([0, 2, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(2));
        assert!(!s.contains(1));
        assert_eq!(s.to_vec(), vec![0, 2, 5]);
        assert_eq!(s.remove(2).to_vec(), vec![0, 5]);
        assert_eq!(format!("{s}"), "{0,2,5}");
    }

    #[test]
    fn full_set_extremes() {
        assert_eq!(ElementSet::full(0), ElementSet::EMPTY);
        assert_eq!(ElementSet::full(128).len(), 128);
        assert_eq!(ElementSet::full(7).len(), 7);
    }

    #[test]
    fn lex_order_examples() {
        let s = |v: &[usize]| ElementSet::from_indices(v.iter().copied());
        assert!(s(&[0]).lex_lt(s(&[0, 1])));
        assert!(s(&[0, 1]).lex_lt(s(&[0, 2])));
        assert!(s(&[0, 2]).lex_lt(s(&[1])));
        assert!(s(&[0, 3]).lex_lt(s(&[1, 2])));
        assert!(!s(&[0, 1]).lex_lt(s(&[0])));
        assert!(!s(&[1]).lex_lt(s(&[1])));
        assert!(ElementSet::EMPTY.lex_lt(s(&[0])));
    }

    #[test]
    fn submask_enumeration_is_complete() {
        let mask = ElementSet::from_indices([1, 3, 4]);
        let subs: Vec<ElementSet> = submasks(mask).collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], ElementSet::EMPTY);
        assert_eq!(subs[7], mask);
        for s in &subs {
            assert!(s.is_subset_of(mask));
        }
    }

    #[test]
    fn combinations_are_lex_sorted_and_complete() {
        let pool = ElementSet::full(5);
        let combos: Vec<ElementSet> = combinations(pool, 3).collect();
        assert_eq!(combos.len(), 10);
        for w in combos.windows(2) {
            assert!(w[0].lex_lt(w[1]));
        }
        let all: Vec<ElementSet> = subsets_up_to(pool, 2).collect();
        assert_eq!(all.len() as u64, count_subsets_up_to(5, 2));
    }

    #[test]
    fn subset_count_matches_enumeration() {
        for n in 0..8 {
            for k in 0..=n {
                let pool = ElementSet::full(n);
                assert_eq!(
                    subsets_up_to(pool, k).count() as u64,
                    count_subsets_up_to(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }
}
