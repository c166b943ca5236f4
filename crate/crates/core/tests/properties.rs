use std::collections::BTreeSet;

use connsys_core::decomposition::{brute_force_branchwidth, exact_branchwidth};
use connsys_core::duality::{run_matrix, Claim};
use connsys_core::filter::{
    brute_force_enumerate, check_classical, check_tangle, enumerate, is_exclusive, is_weak_ultrafilter,
    principal_family, search, search_tangle, AxiomSet, FeMode, SearchConfig, SetFamily,
};
use connsys_core::{canonical_subsets, AxiomId, ConnectivitySystem, ElementSet, GroundSet};
use proptest::prelude::*;

fn weighted(n: usize, weights: &[u8]) -> ConnectivitySystem {
    let mut edges = Vec::new();
    let mut w = weights.iter();
    for u in 0..n {
        for v in u + 1..n {
            let weight = *w.next().unwrap_or(&0) as u32;
            if weight > 0 {
                edges.push((u, v, weight));
            }
        }
    }
    ConnectivitySystem::weighted_graph_cut(GroundSet::indexed(n).unwrap(), edges).unwrap()
}

fn multigraph(vertices: usize, ends: &[(usize, usize)]) -> ConnectivitySystem {
    let vs = (0..vertices).map(|i| format!("v{i}")).collect();
    let edges: Vec<_> = ends.iter().map(|&(u, v)| (u % vertices, v % vertices)).collect();
    let labels = (0..edges.len()).map(|i| format!("e{i}")).collect();
    ConnectivitySystem::graph_cut(vs, edges, Some(labels)).unwrap()
}

fn cut_rank(n: usize, bits: u64) -> ConnectivitySystem {
    let mut adj = vec![vec![0u8; n]; n];
    let mut b = 0;
    for u in 0..n {
        for v in u + 1..n {
            let x = (bits >> b & 1) as u8;
            adj[u][v] = x;
            adj[v][u] = x;
            b += 1;
        }
    }
    ConnectivitySystem::cut_rank(GroundSet::indexed(n).unwrap(), &adj).unwrap()
}

fn system_strategy(min: usize, max: usize) -> impl Strategy<Value = ConnectivitySystem> {
    prop_oneof![
        (min..=max, prop::collection::vec(0u8..=3, 21)).prop_map(|(n, w)| weighted(n, &w)),
        (2usize..=5, prop::collection::vec((0usize..5, 0usize..5), min..=max))
            .prop_map(|(nv, e)| multigraph(nv, &e)),
        (min..=max, any::<u64>()).prop_map(|(n, bits)| cut_rank(n, bits)),
    ]
}

fn configs(k: u32) -> Vec<SearchConfig> {
    let mut out = Vec::new();
    for mode in [FeMode::Conditional, FeMode::Unconditional] {
        for fp in [false, true] {
            out.push(SearchConfig::weak(k, mode, fp));
            out.push(SearchConfig {
                axiom_set: AxiomSet::UltrafilterFs,
                ..SearchConfig::weak(k, mode, fp)
            });
        }
    }
    out.push(SearchConfig::tangle(k));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_tree_enumeration(s in system_strategy(3, 6)) {
        let (bw, tree) = exact_branchwidth(&s).unwrap();
        prop_assert_eq!(bw, brute_force_branchwidth(&s).unwrap());
        prop_assert_eq!(tree.width_of_tree(&s).unwrap().width, bw);
    }

    #[test]
    fn branchwidth_bounds(s in system_strategy(2, 9)) {
        let (bw, tree) = exact_branchwidth(&s).unwrap();
        let singletons = (0..s.len()).map(|x| s.value(ElementSet::singleton(x))).max().unwrap();
        prop_assert!(singletons <= bw);
        prop_assert!(bw <= s.max_value().unwrap());
        prop_assert!(s.value(ElementSet::EMPTY) <= bw);
        for e in 0..tree.edges().len() {
            let side = tree.edge_side_set(e).unwrap();
            prop_assert_eq!(s.value(side), s.value(s.complement(side)));
            prop_assert_eq!(tree.width_of_edge(&s, e).unwrap(), s.value(side));
        }
    }

    #[test]
    fn built_ins_are_symmetric_submodular(s in system_strategy(1, 7)) {
        let report = s.verify_all().unwrap();
        prop_assert!(report.overall, "{:?}", report.failing().next());
    }

    #[test]
    fn k_efficient_sets_are_complement_closed_and_monotone(s in system_strategy(1, 8)) {
        let top = s.max_value().unwrap();
        let mut prev: BTreeSet<ElementSet> = BTreeSet::new();
        for k in 0..=top {
            let sets = s.enumerate_k_efficient(k).unwrap();
            let set: BTreeSet<_> = sets.iter().copied().collect();
            prop_assert!(sets.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(sets.iter().all(|a| set.contains(&s.complement(*a))));
            prop_assert!(prev.is_subset(&set));
            prev = set;
        }
        prop_assert_eq!(prev.len(), 1 << s.len());
    }

    #[test]
    fn search_agrees_with_definition(s in system_strategy(2, 3)) {
        let top = s.max_value().unwrap();
        for k in 0..=top + 1 {
            for cfg in configs(k) {
                let brute = brute_force_enumerate(&s, &cfg).unwrap();
                let searched = enumerate(&s, &cfg, None).unwrap();
                prop_assert_eq!(&searched.families, &brute, "{:?}", cfg);
                prop_assert_eq!(searched.total as usize, brute.len());
                prop_assert_eq!(search(&s, &cfg).unwrap().is_some(), !brute.is_empty());
            }
        }
    }

    #[test]
    fn search_results_certify_themselves(s in system_strategy(3, 8)) {
        let top = s.max_value().unwrap();
        let f_empty = s.value(ElementSet::EMPTY);
        for k in 0..=top {
            for cfg in configs(k) {
                if let Some(w) = search(&s, &cfg).unwrap() {
                    prop_assert!(is_weak_ultrafilter(&w, &s, &cfg).unwrap().overall);
                    if k >= f_empty {
                        prop_assert!(is_exclusive(&w));
                    }
                }
            }
        }
    }

    #[test]
    fn unconditional_existence_iff_k_bounds_everything(s in system_strategy(1, 8)) {
        let top = s.max_value().unwrap();
        for k in 0..=top + 1 {
            let found = search(&s, &SearchConfig::weak(k, FeMode::Unconditional, false)).unwrap();
            prop_assert_eq!(found.is_some(), top <= k);
            if top <= k {
                let w = principal_family(&s, k, 0);
                let cfg = SearchConfig::weak(k, FeMode::Unconditional, false);
                prop_assert!(is_weak_ultrafilter(&w, &s, &cfg).unwrap().overall);
            }
        }
    }

    #[test]
    fn principal_family_is_a_conditional_witness(s in system_strategy(1, 9), pick in 0usize..16) {
        let x0 = pick % s.len();
        let top = s.max_value().unwrap();
        for k in s.value(ElementSet::EMPTY)..=top {
            let w = principal_family(&s, k, x0);
            let cfg = SearchConfig::weak(k, FeMode::Conditional, false);
            prop_assert!(is_weak_ultrafilter(&w, &s, &cfg).unwrap().overall);
        }
    }

    #[test]
    fn tangles_are_conditional_weak_ultrafilters(s in system_strategy(3, 8)) {
        for k in 0..=s.max_value().unwrap() {
            if let Some(t) = search_tangle(&s, k).unwrap() {
                prop_assert!(check_tangle(&t, &s, k).unwrap().overall);
                let cfg = SearchConfig::weak(k, FeMode::Conditional, false);
                prop_assert!(is_weak_ultrafilter(&t, &s, &cfg).unwrap().overall);
            }
        }
    }

    #[test]
    fn matrix_verdicts_recheck_and_cohere(s in system_strategy(2, 6)) {
        let m = run_matrix(&s, "prop").unwrap();
        for cell in &m.cells {
            for v in [&cell.theorem6, &cell.theorem7] {
                prop_assert!(v.recheck(&s).unwrap());
                if v.claim == Claim::UpperBound {
                    prop_assert_eq!(!v.consistent, v.wuf_exists() && v.branchwidth > v.k);
                } else {
                    prop_assert_eq!(!v.consistent, v.wuf_exists() && v.branchwidth == v.k + 1);
                }
            }
            if cell.fe_mode == FeMode::Unconditional {
                prop_assert!(cell.theorem6.consistent && cell.theorem7.consistent);
            }
            // an upper-bound failure at k reappears as an exclusion failure at bw - 1
            // (or the exclusion hypothesis is unmet there)
            if !cell.theorem6.consistent {
                let partner = m.cells.iter().find(|c| {
                    c.k + 1 == m.branchwidth && c.fe_mode == cell.fe_mode && c.require_fp == cell.require_fp
                });
                if let Some(p) = partner {
                    prop_assert!(!p.theorem7.consistent || !p.theorem7.hypothesis_met);
                }
            }
        }
    }
}

#[test]
fn classical_principal_ultrafilter() {
    for n in 1..=5 {
        for x0 in 0..n {
            let members = canonical_subsets(n).into_iter().filter(|a| a.contains(x0));
            let f = SetFamily::new(n, members).unwrap();
            let r = check_classical(&f, n, true).unwrap();
            assert!(r.overall);
            assert!(r.passes(AxiomId::F4));
        }
    }
}
