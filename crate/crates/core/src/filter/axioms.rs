use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::family::SetFamily;
use super::{AxiomSet, FeMode, SearchConfig};
use crate::error::{capacity, Error};
use crate::report::{AxiomEntry, AxiomId, AxiomReport, Witness};
use crate::set::{canonical_subsets, ElementSet};
use crate::system::{ConnectivitySystem, SUBSET_CAP};
use crate::Result;

fn check_ground(family: &SetFamily, n: usize) -> Result<()> {
    capacity("axiom check", n, SUBSET_CAP)?;
    if family.ground_len() == n {
        Ok(())
    } else {
        Err(Error::GroundMismatch)
    }
}

/// Sets `A` whose pair `{A, X \ A}` is missing from the family entirely,
/// each pair reported once by its canonically smaller side. `in_scope`
/// selects which pairs must be decided.
fn undecided_pairs<F>(family: &SetFamily, n: usize, in_scope: F) -> Vec<Witness>
where
    F: Fn(ElementSet, ElementSet) -> bool,
{
    let member = family.indicator();
    canonical_subsets(n)
        .into_iter()
        .filter_map(|a| {
            let c = a.complement_in(n);
            let undecided = !member[a.bits() as usize] && !member[c.bits() as usize];
            (a <= c && undecided && in_scope(a, c)).then(|| Witness::set(a))
        })
        .collect()
}

/// Checks a single axiom on `family` at order `k + 1`.
///
/// Handles the weak-ultrafilter axioms (FB, FH, WIS, FW, FE, FP, FS), the
/// classical ones (F1–F4, which ignore `k` and `f`) and the tangle axioms
/// (TB, TX, T3). FE is quantified according to `fe_mode`; both FE readings
/// accept either side (inclusive or). Pairs in FE that are not
/// k-efficient on either side are out of scope in conditional mode.
pub fn check_axiom(
    family: &SetFamily,
    system: &ConnectivitySystem,
    k: u32,
    axiom: AxiomId,
    fe_mode: FeMode,
) -> Result<AxiomEntry> {
    let n = system.len();
    check_ground(family, n)?;
    let members = family.members();
    let member = family.indicator();
    let is_member = |s: ElementSet| member[s.bits() as usize];
    let f = |s: ElementSet| system.value(s);
    let full = system.full();

    let mut witnesses = Vec::new();
    match axiom {
        AxiomId::FB | AxiomId::TangleBound => {
            for &a in members {
                if f(a) > k {
                    witnesses.push(Witness::set(a).with_values(&[f(a)]));
                }
            }
        }
        AxiomId::FH => {
            for &a in members {
                let room = full.difference(a);
                let mut supersets: Vec<ElementSet> = room
                    .subsets()
                    .filter(|extra| !extra.is_empty())
                    .map(|extra| a.union(extra))
                    .filter(|&b| f(b) <= k && !is_member(b))
                    .collect();
                supersets.sort_unstable();
                witnesses.extend(supersets.into_iter().map(|b| Witness::pair(a, b).with_values(&[f(b)])));
            }
        }
        AxiomId::WIS => {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i..] {
                    let meet = a.intersection(b);
                    if meet.is_empty() && f(meet) <= k {
                        witnesses.push(Witness::pair(a, b));
                    }
                }
            }
        }
        AxiomId::FW | AxiomId::F3 => {
            if is_member(ElementSet::EMPTY) {
                witnesses.push(Witness::set(ElementSet::EMPTY));
            }
        }
        AxiomId::FE => {
            witnesses = match fe_mode {
                FeMode::Conditional => undecided_pairs(family, n, |a, c| f(a) <= k || f(c) <= k),
                FeMode::Unconditional => undecided_pairs(family, n, |_, _| true),
            };
        }
        AxiomId::F4 => witnesses = undecided_pairs(family, n, |_, _| true),
        AxiomId::FP => {
            for &a in members {
                if a.len() == 1 {
                    witnesses.push(Witness::set(a));
                }
            }
        }
        AxiomId::FS => {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i..] {
                    let meet = a.intersection(b);
                    if f(meet) <= k && !is_member(meet) {
                        witnesses.push(Witness::pair(a, b).with_values(&[f(meet)]));
                    }
                }
            }
        }
        AxiomId::F1 => {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i..] {
                    if !is_member(a.intersection(b)) {
                        witnesses.push(Witness::pair(a, b));
                    }
                }
            }
        }
        AxiomId::F2 => {
            for &a in members {
                let mut supersets: Vec<ElementSet> = full
                    .difference(a)
                    .subsets()
                    .map(|extra| a.union(extra))
                    .filter(|&b| !is_member(b))
                    .collect();
                supersets.sort_unstable();
                witnesses.extend(supersets.into_iter().map(|b| Witness::pair(a, b)));
            }
        }
        AxiomId::TangleExactlyOne => {
            for a in canonical_subsets(n) {
                let c = a.complement_in(n);
                if a <= c && (f(a) <= k || f(c) <= k) {
                    let sides = is_member(a) as u8 + (a != c && is_member(c)) as u8;
                    if sides != 1 {
                        witnesses.push(Witness::set(a));
                    }
                }
            }
        }
        AxiomId::TangleTriple => {
            for (i, &a) in members.iter().enumerate() {
                for (j, &b) in members.iter().enumerate().skip(i) {
                    let ab = a.intersection(b);
                    for &c in &members[j..] {
                        if ab.is_disjoint(c) {
                            witnesses.push(Witness {
                                sets: vec![a, b, c],
                                values: Vec::new(),
                            });
                        }
                    }
                }
            }
        }
        other => {
            return Err(Error::Invalid(format!("`{other}` is not a set-family axiom")));
        }
    }
    Ok(AxiomEntry::from_witnesses(axiom, witnesses))
}

/// Checks `family` against the axiom list selected by `config`.
///
/// For the weak-ultrafilter sets this is FB, FH, WIS, FW and FE in
/// `config.fe_mode`, then FP if `require_fp`, then FS for
/// [`AxiomSet::UltrafilterFs`]. Tangle and classical configurations are
/// forwarded to [`check_tangle`] and [`check_classical`].
pub fn is_weak_ultrafilter(
    family: &SetFamily,
    system: &ConnectivitySystem,
    config: &SearchConfig,
) -> Result<AxiomReport> {
    let k = config.order_k;
    let mut ids = vec![AxiomId::FB, AxiomId::FH, AxiomId::WIS, AxiomId::FW, AxiomId::FE];
    match config.axiom_set {
        AxiomSet::Tangle => return check_tangle(family, system, k),
        AxiomSet::Classical => {
            capacity("axiom check", system.len(), SUBSET_CAP)?;
            return check_classical(family, system.len(), true);
        }
        AxiomSet::WeakUltrafilter => {}
        AxiomSet::UltrafilterFs => ids.push(AxiomId::FS),
    }
    if config.require_fp {
        ids.push(AxiomId::FP);
    }
    let entries = ids
        .into_iter()
        .map(|id| check_axiom(family, system, k, id, config.fe_mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(AxiomReport::new(entries))
}

/// Classical filter axioms on the power set of an `n`-element ground set:
/// F1 intersection closure, F2 upward closure, F3 `∅ ∉ F`, and with
/// `ultra` also F4 (every set or its complement belongs).
pub fn check_classical(family: &SetFamily, n: usize, ultra: bool) -> Result<AxiomReport> {
    capacity("axiom check", n, SUBSET_CAP)?;
    // The classical axioms never look at f; a zero table stands in.
    let ground = crate::set::GroundSet::indexed(n)?;
    let zero = ConnectivitySystem::custom(ground, alloc::sync::Arc::new(|_: ElementSet| 0u32))?;
    let mut ids = vec![AxiomId::F1, AxiomId::F2, AxiomId::F3];
    if ultra {
        ids.push(AxiomId::F4);
    }
    let entries = ids
        .into_iter()
        .map(|id| check_axiom(family, &zero, 0, id, FeMode::Unconditional))
        .collect::<Result<Vec<_>>>()?;
    Ok(AxiomReport::new(entries))
}

/// Big-side tangle of order `k + 1`: members are k-efficient (TB), exactly
/// one side of every k-efficient complementary pair is a member (TX), any
/// three members share an element (T3), and `∅` is excluded (FW).
pub fn check_tangle(family: &SetFamily, system: &ConnectivitySystem, k: u32) -> Result<AxiomReport> {
    let entries = [
        AxiomId::TangleBound,
        AxiomId::TangleExactlyOne,
        AxiomId::TangleTriple,
        AxiomId::FW,
    ]
    .into_iter()
    .map(|id| check_axiom(family, system, k, id, FeMode::Conditional))
    .collect::<Result<Vec<_>>>()?;
    Ok(AxiomReport::new(entries))
}

/// No complementary pair has both sides in the family.
pub fn is_exclusive(family: &SetFamily) -> bool {
    let n = family.ground_len();
    family
        .members()
        .iter()
        .all(|a| !family.contains(a.complement_in(n)))
}
