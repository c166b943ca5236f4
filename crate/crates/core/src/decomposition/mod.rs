//! Branch decomposition trees, their widths, and exact branch-width.

mod dp;
mod enumerate;
mod tree;

pub use dp::{exact_branchwidth, DP_CAP};
pub use enumerate::{
    brute_force_branchwidth, enumerate_all_trees, TreeEnumerator, ENUMERATION_CAP, ENUMERATION_MIN,
};
pub use tree::{DecompositionTree, EdgeCutRecord, RootedTree, WidthReport};
