use alloc::vec::Vec;

use super::axioms::is_weak_ultrafilter;
use super::family::SetFamily;
use super::{AxiomSet, SearchConfig};
use crate::error::capacity;
use crate::set::canonical_subsets;
use crate::system::{ConnectivitySystem, SUBSET_CAP};
use crate::Result;

/// Largest candidate universe for [`brute_force_enumerate`] (`2^16`
/// families).
pub const BRUTE_FORCE_CAP: usize = 16;

/// Every family satisfying `config`, found by testing each subset of the
/// candidate universe against the axioms directly. Output is in canonical
/// family order.
///
/// The universe is the k-efficient sets (all subsets for the classical
/// axioms); members outside it would violate FB or TB anyway.
pub fn brute_force_enumerate(system: &ConnectivitySystem, config: &SearchConfig) -> Result<Vec<SetFamily>> {
    capacity("brute-force enumeration", system.len(), SUBSET_CAP)?;
    let universe: Vec<_> = canonical_subsets(system.len())
        .into_iter()
        .filter(|&a| config.axiom_set == AxiomSet::Classical || system.value(a) <= config.order_k)
        .collect();
    capacity("brute-force candidate universe", universe.len(), BRUTE_FORCE_CAP)?;
    let mut out = Vec::new();
    for pick in 0u32..1 << universe.len() {
        let members = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .map(|(_, a)| *a)
            .collect();
        let family = SetFamily::from_sorted(system.len(), members);
        if is_weak_ultrafilter(&family, system, config)?.overall {
            out.push(family);
        }
    }
    out.sort_unstable();
    Ok(out)
}
