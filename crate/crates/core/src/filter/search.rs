use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::family::SetFamily;
use super::{AxiomSet, FeMode, SearchConfig};
use crate::error::capacity;
use crate::set::{canonical_subsets, ElementSet};
use crate::system::ConnectivitySystem;
use crate::Result;

/// Largest ground set accepted by the search routines.
pub const SEARCH_CAP: usize = 12;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum State {
    Unknown,
    In,
    Out,
}

/// Which propagation rules the axiom set switches on.
#[derive(Clone, Copy)]
struct Rules {
    /// FH / F2: members' k-efficient supersets are members.
    upward: bool,
    /// WIS: disjoint members are forbidden when `f(∅) <= k`.
    disjoint: bool,
    /// FS / F1: k-efficient intersections of members are members.
    meet: bool,
    /// FE / F4: every pair in scope has at least one member side.
    at_least_one: bool,
    /// TX: at most one side per pair.
    at_most_one: bool,
    /// T3: any three members share an element.
    triple: bool,
}

/// Backtracking over complementary pairs of candidate sets.
///
/// The candidate universe is every set the axioms allow as a member: the
/// k-efficient sets, or the whole power set for the classical axioms. Each
/// candidate is a tri-state variable; a pair `{A, X \ A}` is decided by
/// fixing both sides, which gives the four outcomes one side, the other,
/// both, neither. Pairs are visited by ascending `f`, then canonical order.
/// Assignments propagate eagerly through a trail so that backtracking is an
/// undo of the trail suffix.
struct Engine {
    universe: Vec<ElementSet>,
    /// universe index by subset mask, or `NONE`
    index: Vec<u32>,
    complement: Vec<u32>,
    supersets: Vec<Vec<u32>>,
    subsets: Vec<Vec<u32>>,
    disjoint: Vec<Vec<u32>>,
    /// pair representatives in branching order
    order: Vec<u32>,
    rules: Rules,
    state: Vec<State>,
    trail: Vec<u32>,
    queue: Vec<u32>,
    ground_len: usize,
}

impl Engine {
    /// `None` when the configuration is infeasible before any branching.
    fn new(system: &ConnectivitySystem, config: &SearchConfig) -> Option<Engine> {
        let n = system.len();
        let k = config.order_k;
        let classical = config.axiom_set == AxiomSet::Classical;
        let allowed = |a: ElementSet| classical || system.value(a) <= k;

        let universe: Vec<ElementSet> = canonical_subsets(n).into_iter().filter(|&a| allowed(a)).collect();
        let mut index = vec![NONE; 1 << n];
        for (i, a) in universe.iter().enumerate() {
            index[a.bits() as usize] = i as u32;
        }
        let lookup = |a: ElementSet| index[a.bits() as usize];
        let complement: Vec<u32> = universe.iter().map(|a| lookup(a.complement_in(n))).collect();

        let rules = match config.axiom_set {
            AxiomSet::WeakUltrafilter | AxiomSet::UltrafilterFs | AxiomSet::Classical => Rules {
                upward: true,
                disjoint: classical || system.value(ElementSet::EMPTY) <= k,
                meet: config.axiom_set != AxiomSet::WeakUltrafilter,
                at_least_one: true,
                at_most_one: false,
                triple: false,
            },
            AxiomSet::Tangle => Rules {
                upward: false,
                disjoint: false,
                meet: false,
                at_least_one: true,
                at_most_one: true,
                triple: true,
            },
        };
        let unconditional = classical
            || (config.fe_mode == FeMode::Unconditional
                && matches!(config.axiom_set, AxiomSet::WeakUltrafilter | AxiomSet::UltrafilterFs));
        if unconditional {
            // every pair needs a member side, and non-candidates cannot be members
            let infeasible = canonical_subsets(n)
                .into_iter()
                .any(|a| lookup(a) == NONE && lookup(a.complement_in(n)) == NONE);
            if infeasible {
                return None;
            }
        }

        let m = universe.len();
        let mut supersets = vec![Vec::new(); m];
        let mut subsets = vec![Vec::new(); m];
        let mut disjoint = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..m {
                let (a, b) = (universe[i], universe[j]);
                if rules.upward && a.is_proper_subset(b) {
                    supersets[i].push(j as u32);
                    subsets[j].push(i as u32);
                }
                if rules.disjoint && a.is_disjoint(b) {
                    disjoint[i].push(j as u32);
                }
            }
        }

        let mut order: Vec<u32> = (0..m as u32)
            .filter(|&i| {
                let c = complement[i as usize];
                c == NONE || universe[i as usize] <= universe[c as usize]
            })
            .collect();
        order.sort_by_key(|&i| (system.value(universe[i as usize]), universe[i as usize]));

        Some(Engine {
            universe,
            index,
            complement,
            supersets,
            subsets,
            disjoint,
            order,
            rules,
            state: vec![State::Unknown; m],
            trail: Vec::new(),
            queue: Vec::new(),
            ground_len: n,
        })
    }

    fn initial(&mut self, config: &SearchConfig) -> bool {
        let empty = self.index[0];
        if empty != NONE && !self.assign(empty, State::Out) {
            return false;
        }
        if config.require_fp && matches!(config.axiom_set, AxiomSet::WeakUltrafilter | AxiomSet::UltrafilterFs) {
            for x in 0..self.ground_len {
                let i = self.index[1 << x];
                if i != NONE && !self.assign(i, State::Out) {
                    return false;
                }
            }
        }
        // Pairs with only one candidate side: FE forces that side in.
        if self.rules.at_least_one {
            for i in 0..self.universe.len() as u32 {
                if self.complement[i as usize] == NONE && !self.assign(i, State::In) {
                    return false;
                }
            }
        }
        self.propagate()
    }

    fn assign(&mut self, i: u32, value: State) -> bool {
        match self.state[i as usize] {
            State::Unknown => {
                self.state[i as usize] = value;
                self.trail.push(i);
                self.queue.push(i);
                true
            }
            current => current == value,
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(i) = self.queue.pop() {
            if !self.consequences(i) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    fn consequences(&mut self, i: u32) -> bool {
        let iu = i as usize;
        let comp = self.complement[iu];
        match self.state[iu] {
            State::In => {
                if self.rules.at_most_one && comp != NONE && comp != i && !self.assign(comp, State::Out) {
                    return false;
                }
                if self.rules.upward {
                    for t in 0..self.supersets[iu].len() {
                        if !self.assign(self.supersets[iu][t], State::In) {
                            return false;
                        }
                    }
                }
                if self.rules.disjoint {
                    for t in 0..self.disjoint[iu].len() {
                        if !self.assign(self.disjoint[iu][t], State::Out) {
                            return false;
                        }
                    }
                }
                let a = self.universe[iu];
                if self.rules.meet {
                    for j in 0..self.universe.len() {
                        if self.state[j] == State::In {
                            let meet = self.index[a.intersection(self.universe[j]).bits() as usize];
                            if meet != NONE && !self.assign(meet, State::In) {
                                return false;
                            }
                        }
                    }
                }
                if self.rules.triple {
                    for j in 0..self.universe.len() {
                        if self.state[j] != State::In {
                            continue;
                        }
                        let ab = a.intersection(self.universe[j]);
                        for c in 0..self.universe.len() {
                            if ab.is_disjoint(self.universe[c]) && !self.assign(c as u32, State::Out) {
                                return false;
                            }
                        }
                    }
                }
            }
            State::Out => {
                if self.rules.upward {
                    for t in 0..self.subsets[iu].len() {
                        if !self.assign(self.subsets[iu][t], State::Out) {
                            return false;
                        }
                    }
                }
                if self.rules.at_least_one {
                    if comp == NONE || comp == i {
                        return false;
                    }
                    if !self.assign(comp, State::In) {
                        return false;
                    }
                }
            }
            State::Unknown => unreachable!("queued variables are assigned"),
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for i in self.trail.drain(mark..) {
            self.state[i as usize] = State::Unknown;
        }
    }

    fn next_unknown(&self) -> Option<u32> {
        self.order.iter().find_map(|&rep| {
            let comp = self.complement[rep as usize];
            if self.state[rep as usize] == State::Unknown {
                Some(rep)
            } else if comp != NONE && self.state[comp as usize] == State::Unknown {
                Some(comp)
            } else {
                None
            }
        })
    }

    fn family(&self) -> SetFamily {
        let members = self
            .universe
            .iter()
            .zip(&self.state)
            .filter(|(_, s)| **s == State::In)
            .map(|(a, _)| *a)
            .collect();
        SetFamily::from_sorted(self.ground_len, members)
    }

    /// Depth-first over all consistent complete assignments.
    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(SetFamily) -> ControlFlow<()>,
    {
        let Some(var) = self.next_unknown() else {
            return visit(self.family());
        };
        for value in [State::In, State::Out] {
            let mark = self.trail.len();
            if self.assign(var, value) && self.propagate() {
                self.run(visit)?;
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }
}

fn drive<F>(system: &ConnectivitySystem, config: &SearchConfig, mut visit: F) -> Result<()>
where
    F: FnMut(SetFamily) -> ControlFlow<()>,
{
    capacity("weak ultrafilter search", system.len(), SEARCH_CAP)?;
    let Some(mut engine) = Engine::new(system, config) else {
        return Ok(());
    };
    if engine.initial(config) {
        let _ = engine.run(&mut visit);
    }
    Ok(())
}

/// Finds one family satisfying `config`, or `None` if none exists.
///
/// In unconditional FE mode a pair with neither side k-efficient makes the
/// answer `None` without any search.
pub fn search(system: &ConnectivitySystem, config: &SearchConfig) -> Result<Option<SetFamily>> {
    let mut found = None;
    drive(system, config, |family| {
        found = Some(family);
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// A big-side tangle of order `k + 1`, if one exists.
pub fn search_tangle(system: &ConnectivitySystem, k: u32) -> Result<Option<SetFamily>> {
    search(system, &SearchConfig::tangle(k))
}

/// Output of [`enumerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// The first `limit` families in canonical family order.
    pub families: Vec<SetFamily>,
    /// Number of satisfying families overall.
    pub total: u64,
}

/// Every family satisfying `config`, truncated to the first `limit` in
/// canonical order. The search still visits every solution to count them.
pub fn enumerate(system: &ConnectivitySystem, config: &SearchConfig, limit: Option<usize>) -> Result<Enumeration> {
    let mut heap = BinaryHeap::new();
    let mut total = 0u64;
    drive(system, config, |family| {
        total += 1;
        if limit != Some(0) {
            heap.push(family);
            if limit.is_some_and(|l| heap.len() > l) {
                heap.pop();
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(Enumeration {
        families: heap.into_sorted_vec(),
        total,
    })
}

/// Existence of satisfying families for each `k` in `0..=max f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderScan {
    /// `exists[k]` for `k = 0..=max f`.
    pub exists: Vec<bool>,
    /// Largest order `k + 1` with a family at `k`.
    pub max_order: Option<u32>,
}

/// Scans `k` from 0 to `max f`, running [`search`] at each value.
pub fn max_order(system: &ConnectivitySystem, config: &SearchConfig) -> Result<OrderScan> {
    let top = system.max_value()?;
    let mut exists = Vec::with_capacity(top as usize + 1);
    for k in 0..=top {
        exists.push(search(system, &config.with_k(k))?.is_some());
    }
    let max_order = exists.iter().rposition(|&e| e).map(|k| k as u32 + 1);
    Ok(OrderScan { exists, max_order })
}

#[cfg(test)]
mod tests {
    use super::super::axioms::{check_tangle, is_exclusive, is_weak_ultrafilter};
    use super::*;
    use crate::set::GroundSet;
    use alloc::string::ToString;

    fn table2() -> ConnectivitySystem {
        ConnectivitySystem::table(GroundSet::new(["a", "b"]).unwrap(), vec![0, 1, 1, 0]).unwrap()
    }

    fn triangle() -> ConnectivitySystem {
        let vs = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        ConnectivitySystem::graph_cut(vs, vec![(0, 1), (1, 2), (2, 0)], None).unwrap()
    }

    #[test]
    fn two_element_search() {
        let s = table2();
        let cfg = SearchConfig::weak(1, FeMode::Conditional, false);
        let w = search(&s, &cfg).unwrap().unwrap();
        assert!(is_weak_ultrafilter(&w, &s, &cfg).unwrap().overall);
        let all = enumerate(&s, &cfg, None).unwrap();
        let a = SetFamily::new(2, [ElementSet::from_bits(1), ElementSet::from_bits(3)]).unwrap();
        let b = SetFamily::new(2, [ElementSet::from_bits(2), ElementSet::from_bits(3)]).unwrap();
        assert!(all.families.contains(&a) && all.families.contains(&b));
        let first = enumerate(&s, &cfg, Some(1)).unwrap();
        assert_eq!(first.families, all.families[..1]);
        assert_eq!(first.total, all.total);
    }

    #[test]
    fn triangle_searches() {
        let s = triangle();
        let w = search(&s, &SearchConfig::weak(1, FeMode::Conditional, false)).unwrap().unwrap();
        assert_eq!(w.members(), [ElementSet::from_bits(0b111)]);
        assert_eq!(search(&s, &SearchConfig::weak(1, FeMode::Unconditional, false)).unwrap(), None);
        let cfg = SearchConfig::weak(2, FeMode::Unconditional, false);
        let w = search(&s, &cfg).unwrap().unwrap();
        assert!(is_weak_ultrafilter(&w, &s, &cfg).unwrap().overall);
        assert!(is_exclusive(&w));
        let t = search_tangle(&s, 1).unwrap().unwrap();
        assert_eq!(t.members(), [ElementSet::from_bits(0b111)]);
        assert!(check_tangle(&t, &s, 1).unwrap().overall);
    }

    #[test]
    fn order_scans() {
        let s = triangle();
        let scan = max_order(&s, &SearchConfig::weak(0, FeMode::Unconditional, false)).unwrap();
        assert_eq!(scan.exists, vec![false, false, true]);
        assert_eq!(scan.max_order, Some(3));
        let scan = max_order(&table2(), &SearchConfig::weak(0, FeMode::Unconditional, false)).unwrap();
        assert_eq!(scan.exists, vec![false, true]);
        let zero = ConnectivitySystem::table(GroundSet::indexed(3).unwrap(), vec![0; 8]).unwrap();
        let scan = max_order(&zero, &SearchConfig::weak(0, FeMode::Unconditional, false)).unwrap();
        assert_eq!(scan.exists, vec![true]);
    }

    #[test]
    fn classical_search_finds_principal_ultrafilters() {
        // On a finite power set the ultrafilters are exactly the principal ones.
        let zero = ConnectivitySystem::table(GroundSet::indexed(3).unwrap(), vec![0; 8]).unwrap();
        let all = enumerate(&zero, &SearchConfig::classical(), None).unwrap();
        assert_eq!(all.total, 3);
        for (x, fam) in all.families.iter().enumerate() {
            assert!(fam.members().iter().all(|m| m.contains(x)));
            assert_eq!(fam.len(), 4);
        }
    }

    #[test]
    fn search_cap() {
        let g = GroundSet::indexed(13).unwrap();
        let s = ConnectivitySystem::weighted_graph_cut(g, vec![]).unwrap();
        assert!(search(&s, &SearchConfig::weak(0, FeMode::Conditional, false)).is_err());
    }
}
