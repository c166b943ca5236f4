use alloc::vec;
use alloc::vec::Vec;

use super::tree::DecompositionTree;
use crate::error::{capacity, Error};
use crate::system::ConnectivitySystem;
use crate::Result;

pub const ENUMERATION_MIN: usize = 3;
pub const ENUMERATION_CAP: usize = 7;

/// Streams every cubic tree with leaves labelled `0..n` exactly once,
/// `(2n - 5)!!` in total.
///
/// Trees are built by inserting leaves `3, 4, ..., n - 1` in turn into an
/// edge of the current tree, starting from the star on `0, 1, 2`. The
/// insertion choices form a mixed-radix counter; each counter value names a
/// distinct tree. Leaf `i` is node `i`.
pub fn enumerate_all_trees(n: usize) -> Result<TreeEnumerator> {
    if n < ENUMERATION_MIN {
        return Err(Error::Capacity {
            what: "tree enumeration (minimum size 3)",
            size: n,
            cap: ENUMERATION_MIN,
        });
    }
    capacity("tree enumeration", n, ENUMERATION_CAP)?;
    Ok(TreeEnumerator {
        n,
        choices: vec![0; n - 3],
        done: false,
    })
}

pub struct TreeEnumerator {
    n: usize,
    choices: Vec<usize>,
    done: bool,
}

impl TreeEnumerator {
    fn build(&self) -> DecompositionTree {
        let n = self.n;
        let centre = n;
        let mut edges = vec![(0, centre), (1, centre), (2, centre)];
        for (step, &at) in self.choices.iter().enumerate() {
            let leaf = step + 3;
            let mid = n + 1 + step;
            let (u, v) = edges[at];
            edges[at] = (u, mid);
            edges.push((mid, v));
            edges.push((mid, leaf));
        }
        let leaves: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        DecompositionTree::new(n, 2 * n - 2, edges, &leaves).expect("insertion keeps the tree cubic")
    }

    fn advance(&mut self) {
        for (step, c) in self.choices.iter_mut().enumerate().rev() {
            // the tree has 2(step + 3) - 3 edges when leaf step + 3 arrives
            if *c + 1 < 2 * step + 3 {
                *c += 1;
                return;
            }
            *c = 0;
        }
        self.done = true;
    }
}

impl Iterator for TreeEnumerator {
    type Item = DecompositionTree;

    fn next(&mut self) -> Option<DecompositionTree> {
        if self.done {
            return None;
        }
        let tree = self.build();
        self.advance();
        Some(tree)
    }
}

/// Minimum width over every decomposition tree, by enumeration.
pub fn brute_force_branchwidth(system: &ConnectivitySystem) -> Result<u32> {
    let mut best = u32::MAX;
    for tree in enumerate_all_trees(system.len())? {
        best = best.min(tree.width_of_tree(system)?.width);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::GroundSet;
    use std::collections::BTreeSet;

    fn double_factorial(mut k: usize) -> usize {
        let mut acc = 1;
        while k > 1 {
            acc *= k;
            k -= 2;
        }
        acc
    }

    #[test]
    fn counts_and_distinctness() {
        for n in 3..=7 {
            let trees: Vec<_> = enumerate_all_trees(n).unwrap().collect();
            assert_eq!(trees.len(), double_factorial(2 * n - 5), "n = {n}");
            let distinct: BTreeSet<Vec<u32>> = trees
                .iter()
                .map(|t| t.splits().iter().map(|s| s.bits()).collect())
                .collect();
            assert_eq!(distinct.len(), trees.len());
        }
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_all_trees(2).is_err());
        assert!(enumerate_all_trees(8).is_err());
    }

    #[test]
    fn constant_zero_is_zero() {
        for n in 3..=6 {
            let g = GroundSet::indexed(n).unwrap();
            let s = ConnectivitySystem::table(g, vec![0; 1 << n]).unwrap();
            assert_eq!(brute_force_branchwidth(&s).unwrap(), 0);
        }
    }
}
