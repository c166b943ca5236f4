use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::Result;

/// Hard cap on the number of ground-set elements. Exhaustive routines
/// iterate over all `2^n` subsets, and subsets are stored as `u32` masks.
pub const MAX_ELEMENTS: usize = 16;

/// The finite ground set `X`: an ordered list of distinct element labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        crate::error::capacity("ground set", labels.len(), MAX_ELEMENTS)?;
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set labelled `0, 1, ..., n - 1`.
    pub fn indexed(n: usize) -> Result<Self> {
        GroundSet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The whole ground set `X`.
    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1usize << self.len()
    }

    pub fn set_from_labels<I, S>(&self, labels: I) -> Result<ElementSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u32;
        for label in labels {
            let label = label.as_ref();
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownElement(label.into()))?;
            bits |= 1 << i;
        }
        Ok(ElementSet(bits))
    }

    /// Member labels of `set` in ground-set order.
    pub fn labels_of(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// Errors unless every member of `set` belongs to this ground set.
    pub fn check(&self, set: ElementSet) -> Result<()> {
        if set.0 & !self.full().0 != 0 {
            Err(Error::NotInGround {
                bits: set.0,
                size: self.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn complement(&self, set: ElementSet) -> ElementSet {
        set.complement_in(self.len())
    }
}

/// A subset of a ground set, stored as a bitmask over element indices.
///
/// Equality is extensional. The ordering is the canonical subset order:
/// by cardinality first, then lexicographically on the sorted member
/// indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        ElementSet(1 << index)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        ElementSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        ElementSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 32 && self.0 >> index & 1 == 1
    }

    /// Smallest member index.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
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

    pub fn complement_in(self, n: usize) -> Self {
        ElementSet(!self.0 & ElementSet::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(i as usize)
            }
        })
    }

    /// All subsets of `self` (including `self` and the empty set), in
    /// decreasing numeric mask order.
    pub fn subsets(self) -> impl Iterator<Item = ElementSet> {
        let full = self.0;
        let mut next = Some(full);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(ElementSet(cur))
        })
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            // Equal sizes: the set holding the lowest index of the symmetric
            // difference comes first in the lexicographic order.
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All `2^n` subsets of an `n`-element ground set in canonical order.
pub fn canonical_subsets(n: usize) -> Vec<ElementSet> {
    assert!(n <= MAX_ELEMENTS, "ground set too large");
    let mut all: Vec<ElementSet> = (0..1u32 << n).map(ElementSet).collect();
    all.sort_unstable();
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn sorted_indices(s: ElementSet) -> Vec<usize> {
        s.iter().collect()
    }

    #[test]
    fn canonical_order_small() {
        let order: Vec<Vec<usize>> = canonical_subsets(3).into_iter().map(sorted_indices).collect();
        assert_eq!(
            order,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            GroundSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn too_many_elements_rejected() {
        assert!(matches!(
            GroundSet::indexed(17),
            Err(Error::Capacity { cap: 16, .. })
        ));
        assert_eq!(GroundSet::indexed(16).unwrap().full().bits(), 0xffff);
    }

    #[test]
    fn labels_round_trip_and_unknown_label() {
        let g = GroundSet::new(["x", "y", "z"]).unwrap();
        let s = g.set_from_labels(["z", "x"]).unwrap();
        assert_eq!(g.labels_of(s), vec!["x", "z"]);
        assert_eq!(
            g.set_from_labels(["w"]),
            Err(Error::UnknownElement("w".into()))
        );
        assert!(g.check(ElementSet::from_bits(0b1000)).is_err());
    }

    #[test]
    fn subsets_enumerates_all() {
        let s = ElementSet::from_indices([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(ElementSet::EMPTY.subsets().count(), 1);
    }

    proptest! {
        #[test]
        fn ordering_matches_sorted_index_lists(a in 0u32..1 << 10, b in 0u32..1 << 10) {
            let (x, y) = (ElementSet(a), ElementSet(b));
            let key = |s: ElementSet| (s.len(), sorted_indices(s));
            prop_assert_eq!(x.cmp(&y), key(x).cmp(&key(y)));
        }
    }
}
