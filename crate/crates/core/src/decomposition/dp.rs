use alloc::vec;

use super::tree::{DecompositionTree, RootedTree};
use crate::error::capacity;
use crate::set::ElementSet;
use crate::system::ConnectivitySystem;
use crate::Result;

/// Largest ground set accepted by [`exact_branchwidth`] (`3^n` work).
pub const DP_CAP: usize = 14;

/// Exact branch-width and a tree attaining it.
///
/// For every subset `S`, `best[S]` is the least possible maximum edge width
/// inside a rooted subtree whose leaves are exactly `S`, counting the edge
/// above the subtree:
///
/// ```text
/// best[{x}] = f({x})
/// best[S]   = max(f(S), min over S = A ⊎ B of max(best[A], best[B]))
/// ```
///
/// and the answer is the minimum of `max(best[A], best[X \ A])` over
/// bipartitions of `X`. Each unordered split is visited once, taking `A` to
/// be the side holding the lowest element of `S`; ties go to the
/// canonically first `A`.
///
/// Ground sets with fewer than two elements yield `f(X)` and the
/// degenerate tree.
pub fn exact_branchwidth(system: &ConnectivitySystem) -> Result<(u32, DecompositionTree)> {
    let n = system.len();
    capacity("exact branch-width", n, DP_CAP)?;
    if n < 2 {
        return Ok((system.value(system.full()), DecompositionTree::degenerate(n)?));
    }
    let size = 1usize << n;
    let mut best = vec![0u32; size];
    let mut split = vec![0u32; size];
    let full = system.full().bits();

    // Every proper submask is numerically smaller, so increasing mask order
    // respects the recursion.
    for mask in 1..size as u32 {
        let s = ElementSet::from_bits(mask);
        if s.len() == 1 {
            best[mask as usize] = system.value(s);
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut choice: Option<(u32, ElementSet)> = None;
        for sub in ElementSet::from_bits(rest).subsets() {
            let a = low | sub.bits();
            if a == mask {
                continue;
            }
            let b = mask ^ a;
            let cand = best[a as usize].max(best[b as usize]);
            let a = ElementSet::from_bits(a);
            let better = match choice {
                None => true,
                Some((v, prev)) => cand < v || (cand == v && a < prev),
            };
            if better {
                choice = Some((cand, a));
            }
        }
        let (value, a) = choice.expect("sets of size >= 2 have a split");
        split[mask as usize] = a.bits();
        best[mask as usize] = if mask == full {
            value
        } else {
            value.max(system.value(s))
        };
    }

    let root = rebuild(full, &split);
    let tree = DecompositionTree::from_rooted(n, &root)?;
    Ok((best[full as usize], tree))
}

fn rebuild(mask: u32, split: &[u32]) -> RootedTree {
    if mask.count_ones() == 1 {
        return RootedTree::Leaf(mask.trailing_zeros() as usize);
    }
    let a = split[mask as usize];
    RootedTree::node(rebuild(a, split), rebuild(mask ^ a, split))
}
