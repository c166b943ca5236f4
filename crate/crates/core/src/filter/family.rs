use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::set::{canonical_subsets, ElementSet};
use crate::system::ConnectivitySystem;
use crate::Result;

/// A collection of distinct subsets of one ground set.
///
/// Members are kept sorted in canonical subset order, so families compare
/// lexicographically by their sorted member lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    ground_len: usize,
    members: Vec<ElementSet>,
}

impl SetFamily {
    /// Errors on duplicates or on members outside the ground set.
    pub fn new<I: IntoIterator<Item = ElementSet>>(ground_len: usize, members: I) -> Result<Self> {
        let full = ElementSet::full(ground_len);
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|m| !m.is_subset(full)) {
            return Err(Error::NotInGround {
                bits: bad.bits(),
                size: ground_len,
            });
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("family has duplicate members".into()));
        }
        Ok(SetFamily { ground_len, members })
    }

    pub fn empty(ground_len: usize) -> Self {
        SetFamily {
            ground_len,
            members: Vec::new(),
        }
    }

    pub(crate) fn from_sorted(ground_len: usize, members: Vec<ElementSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { ground_len, members }
    }

    pub fn ground_len(&self) -> usize {
        self.ground_len
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// Membership indexed by subset mask.
    pub fn indicator(&self) -> Vec<bool> {
        let mut table = vec![false; 1 << self.ground_len];
        for m in &self.members {
            table[m.bits() as usize] = true;
        }
        table
    }

    /// `{X \ A : A ∈ self}`. Applying it twice gives the family back.
    pub fn complements(&self) -> SetFamily {
        let mut members: Vec<ElementSet> =
            self.members.iter().map(|m| m.complement_in(self.ground_len)).collect();
        members.sort_unstable();
        SetFamily::from_sorted(self.ground_len, members)
    }
}

/// `{A : f(A) <= k, x0 ∈ A}`, the family of k-efficient sets through one
/// element.
pub fn principal_family(system: &ConnectivitySystem, k: u32, x0: usize) -> SetFamily {
    let members = canonical_subsets(system.len())
        .into_iter()
        .filter(|a| a.contains(x0) && system.value(*a) <= k)
        .collect();
    SetFamily::from_sorted(system.len(), members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_deduplicated() {
        let f = SetFamily::new(2, [ElementSet::from_bits(3), ElementSet::from_bits(1)]).unwrap();
        assert_eq!(f.members(), [ElementSet::from_bits(1), ElementSet::from_bits(3)]);
        assert!(SetFamily::new(2, [ElementSet::from_bits(1), ElementSet::from_bits(1)]).is_err());
        assert!(SetFamily::new(2, [ElementSet::from_bits(4)]).is_err());
    }

    #[test]
    fn complements_are_an_involution() {
        let w = SetFamily::new(2, [ElementSet::from_bits(3), ElementSet::from_bits(1)]).unwrap();
        let i = w.complements();
        assert_eq!(i.members(), [ElementSet::EMPTY, ElementSet::from_bits(2)]);
        assert_eq!(i.complements(), w);
        assert!(SetFamily::empty(2).complements().is_empty());
    }
}
