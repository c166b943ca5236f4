//! One PASS/FAIL line per acceptance criterion. Exits non-zero when any
//! criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;

use connsys::format::{instance_json, Instance};
use connsys::fuzz::{self, reverify_finding};
use connsys::generate::{generate_one, EdgeCount, GeneratorConfig, GeneratorKind};
use connsys_core::decomposition::{brute_force_branchwidth, enumerate_all_trees, exact_branchwidth, DecompositionTree};
use connsys_core::duality::Claim;
use connsys_core::filter::{
    brute_force_enumerate, enumerate, is_weak_ultrafilter, principal_family, search, search_tangle, AxiomSet, FeMode,
    SearchConfig,
};
use connsys_core::{ConnectivitySystem, ElementSet, GroundSet};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn instance(kind: GeneratorKind, vertices: usize, edges: EdgeCount, seed: u64, index: usize) -> Instance {
    generate_one(&GeneratorConfig::new(kind, vertices, edges, seed, index + 1), index).unwrap()
}

/// Same values as `inst`, stored as a plain table.
fn as_table(sys: &ConnectivitySystem) -> ConnectivitySystem {
    ConnectivitySystem::table(sys.ground().clone(), sys.values()).unwrap()
}

/// Mixed corpus of `count` instances with at most `max_n` elements.
fn corpus(count: usize, max_n: usize, seed: u64) -> Vec<Instance> {
    let span = max_n - 2;
    (0..count)
        .map(|i| {
            let size = 3 + (i / 3) % span;
            match i % 3 {
                0 => instance(GeneratorKind::WeightedGraphCut, size, EdgeCount::Density(0.6), seed, i),
                1 => instance(GeneratorKind::CutRank, size, EdgeCount::Density(0.5), seed, i),
                _ => instance(GeneratorKind::GraphCut, 5, EdgeCount::Exact(size), seed, i),
            }
        })
        .collect()
}

fn ac1() -> Outcome {
    let mut checked = 0;
    for i in 0..120 {
        let size = 3 + i % 4;
        let sys = if i % 2 == 0 {
            instance(GeneratorKind::GraphCut, 5, EdgeCount::Exact(size), 101, i).system
        } else {
            as_table(&instance(GeneratorKind::WeightedGraphCut, size, EdgeCount::Density(0.7), 101, i).system)
        };
        let (bw, tree) = exact_branchwidth(&sys).map_err(|e| e.to_string())?;
        let brute = brute_force_branchwidth(&sys).map_err(|e| e.to_string())?;
        ensure(bw == brute, || format!("instance {i}: dp {bw}, enumeration {brute}"))?;
        ensure(tree.width_of_tree(&sys).unwrap().width == bw, || format!("instance {i}: witness width"))?;
        checked += 1;
    }
    Ok(format!("{checked} instances, 3 <= |X| <= 6"))
}

fn ac2() -> Outcome {
    let mut counts = Vec::new();
    for (n, expected) in [(3, 1), (4, 3), (5, 15), (6, 105)] {
        let trees: Vec<DecompositionTree> = enumerate_all_trees(n).map_err(|e| e.to_string())?.collect();
        ensure(trees.len() == expected, || format!("n={n}: {} trees", trees.len()))?;
        for t in &trees {
            // the constructor validates degree, connectivity and the leaf bijection
            let copy = DecompositionTree::from_rooted(n, &t.to_rooted().unwrap());
            ensure(copy.is_ok(), || format!("n={n}: invalid tree"))?;
            ensure(t.leaves().count() == n, || format!("n={n}: leaf count"))?;
        }
        counts.push(trees.len().to_string());
    }
    Ok(format!("counts {}", counts.join("/")))
}

fn ac3() -> Outcome {
    let mut cases = 0;
    let mut families = 0;
    let three = [
        instance(GeneratorKind::WeightedGraphCut, 3, EdgeCount::Density(0.8), 3, 0).system,
        instance(GeneratorKind::WeightedGraphCut, 3, EdgeCount::Density(0.8), 3, 1).system,
        instance(GeneratorKind::CutRank, 3, EdgeCount::Exact(2), 3, 2).system,
        instance(GeneratorKind::GraphCut, 3, EdgeCount::Exact(3), 3, 3).system,
        instance(GeneratorKind::GraphCut, 4, EdgeCount::Exact(3), 3, 4).system,
        instance(GeneratorKind::GraphCut, 4, EdgeCount::Exact(3), 3, 5).system,
    ];
    for sys in &three {
        ensure(sys.len() == 3, || "corpus instance is not 3 elements".into())?;
        let top = sys.max_value().unwrap();
        for k in 0..=top + 1 {
            let mut configs = vec![SearchConfig::tangle(k)];
            for mode in [FeMode::Conditional, FeMode::Unconditional] {
                for fp in [false, true] {
                    configs.push(SearchConfig::weak(k, mode, fp));
                    configs.push(SearchConfig { axiom_set: AxiomSet::UltrafilterFs, ..SearchConfig::weak(k, mode, fp) });
                }
            }
            for cfg in configs {
                let brute = brute_force_enumerate(sys, &cfg).map_err(|e| e.to_string())?;
                let found = enumerate(sys, &cfg, None).map_err(|e| e.to_string())?;
                ensure(found.families == brute, || format!("k={k} {cfg:?}: families differ"))?;
                cases += 1;
                families += brute.len();
            }
        }
    }
    Ok(format!("{cases} cases, {families} families"))
}

fn ac4(corpus: &[Instance]) -> Outcome {
    let mut checks = 0;
    for inst in corpus {
        let sys = &inst.system;
        let top = sys.max_value().unwrap();
        for k in 0..=top {
            let found = search(sys, &SearchConfig::weak(k, FeMode::Unconditional, false)).map_err(|e| e.to_string())?;
            ensure(found.is_some() == (top <= k), || format!("{} k={k}: existence mismatch", inst.name))?;
            checks += 1;
        }
    }
    let matrices = fuzz::run(corpus, Some(4)).map_err(|e| e.to_string())?;
    let violations = fuzz::findings(corpus, &matrices, Some(FeMode::Unconditional)).len();
    ensure(violations == 0, || format!("{violations} unconditional violations"))?;
    let conditional = fuzz::findings(corpus, &matrices, Some(FeMode::Conditional)).len();
    Ok(format!(
        "{} instances, {checks} (instance, k) checks, 0 unconditional violations ({conditional} conditional findings)",
        corpus.len()
    ))
}

fn ac5(corpus: &[Instance]) -> Outcome {
    let mut checks = 0;
    for inst in corpus {
        let sys = &inst.system;
        for k in sys.value(ElementSet::EMPTY)..=sys.max_value().unwrap() {
            let cfg = SearchConfig::weak(k, FeMode::Conditional, false);
            for x0 in 0..sys.len() {
                let w = principal_family(sys, k, x0);
                let r = is_weak_ultrafilter(&w, sys, &cfg).map_err(|e| e.to_string())?;
                ensure(r.overall, || format!("{} k={k} x0={x0}: {:?}", inst.name, r.failing().next()))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks}/{checks} principal families pass"))
}

fn triangle() -> Instance {
    let vs = ["a", "b", "c"].map(String::from).to_vec();
    Instance {
        name: "triangle".into(),
        system: ConnectivitySystem::graph_cut(vs, vec![(0, 1), (1, 2), (2, 0)], None).unwrap(),
        source: None,
    }
}

fn ac6() -> Outcome {
    let corpus = [triangle()];
    let matrices = fuzz::run(&corpus, None).map_err(|e| e.to_string())?;
    let all = fuzz::findings(&corpus, &matrices, Some(FeMode::Conditional));
    let hit = all
        .iter()
        .find(|f| {
            let v = f.verdict;
            v.claim == Claim::UpperBound && v.k == 1 && !v.config.require_fp
        })
        .ok_or("no theorem6 violation at k=1")?;
    let fam = hit.verdict.family.as_ref().ok_or("violation without family")?;
    let full = corpus[0].system.full();
    ensure(fam.members() == [full], || format!("family {:?}", fam.members()))?;
    ensure(hit.verdict.branchwidth == 2, || format!("branch-width {}", hit.verdict.branchwidth))?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let written = fuzz::write_findings(&all, dir.path()).map_err(|e| e.to_string())?;
    let path = dir.path().join(hit.dir_name());
    ensure(written.contains(&path), || "finding not written".into())?;
    ensure(reverify_finding(&path).map_err(|e| e.to_string())?, || "re-verification failed".into())?;
    Ok(format!("W = {{X}}, bw 2, re-verified from {}", hit.dir_name()))
}

fn ac7(corpus: &[Instance]) -> Outcome {
    let mut found = 0;
    for inst in corpus {
        let sys = &inst.system;
        for k in 0..=sys.max_value().unwrap() {
            if let Some(t) = search_tangle(sys, k).map_err(|e| e.to_string())? {
                let cfg = SearchConfig::weak(k, FeMode::Conditional, false);
                let r = is_weak_ultrafilter(&t, sys, &cfg).map_err(|e| e.to_string())?;
                ensure(r.overall, || format!("{} k={k}: tangle fails {:?}", inst.name, r.failing().next()))?;
                found += 1;
            }
        }
    }
    ensure(found > 0, || "no tangles found".into())?;
    Ok(format!("{found}/{found} tangles pass"))
}

fn ac8() -> Outcome {
    let mut systems: Vec<ConnectivitySystem> = Vec::new();
    for (i, n) in (1..=10).enumerate() {
        let w = instance(GeneratorKind::WeightedGraphCut, n, EdgeCount::Density(0.5), 8, i).system;
        systems.push(as_table(&w));
        systems.push(w);
        systems.push(instance(GeneratorKind::CutRank, n, EdgeCount::Density(0.5), 8, i).system);
        let m = n.min(4 + n / 3);
        let pairs = m * (m - 1) / 2;
        systems.push(instance(GeneratorKind::GraphCut, m, EdgeCount::Exact(n.min(pairs)), 8, i).system);
        let ground = GroundSet::indexed(n).unwrap();
        let count = Arc::new(move |a: ElementSet| a.len().min(n - a.len()) as u32);
        systems.push(ConnectivitySystem::custom(ground, count).unwrap());
    }
    for s in &systems {
        let r = s.verify_all().map_err(|e| e.to_string())?;
        ensure(r.overall, || format!("{} on {} elements fails", s.spec().kind(), s.len()))?;
    }
    let mut planted = 0;
    for i in 0..40 {
        let n = 3 + i % 4;
        let base = instance(GeneratorKind::WeightedGraphCut, n, EdgeCount::Density(0.7), 88, i).system;
        let mut values = base.values();
        let at = (i * 7 + 1) % values.len();
        values[at] = if i % 2 == 0 || values[at] == 0 { values[at] + 1 + (i as u32 % 3) } else { values[at] - 1 };
        let mutated = ConnectivitySystem::table(base.ground().clone(), values).unwrap();
        let r = mutated.verify_all().map_err(|e| e.to_string())?;
        ensure(!r.overall, || format!("mutation {i} undetected"))?;
        planted += 1;
    }
    Ok(format!("{} built-in systems pass, {planted}/{planted} mutations detected", systems.len()))
}

fn run_cli(args: &[&str], cwd: &Path) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_connsys"))
        .args(args)
        .current_dir(cwd)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out.stdout)
}

fn ac9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = dir.path();
    let mut round_trips = 0;
    for i in 0..12 {
        let inst = match i % 3 {
            0 => instance(GeneratorKind::GraphCut, 5, EdgeCount::Exact(3 + i % 6), 9, i),
            1 => instance(GeneratorKind::WeightedGraphCut, 3 + i % 6, EdgeCount::Density(0.6), 9, i),
            _ => instance(GeneratorKind::CutRank, 3 + i % 6, EdgeCount::Density(0.5), 9, i),
        };
        let file = format!("inst{i}.json");
        let tree = format!("tree{i}.json");
        std::fs::write(p.join(&file), connsys::format::to_pretty(&instance_json(&inst))).map_err(|e| e.to_string())?;
        let first: serde_json::Value =
            serde_json::from_slice(&run_cli(&["branchwidth", &file, "--decompose", &tree], p)?).map_err(|e| e.to_string())?;
        let check: serde_json::Value =
            serde_json::from_slice(&run_cli(&["branchwidth", &file, "--check", &tree], p)?).map_err(|e| e.to_string())?;
        ensure(check["check"]["matches"] == true, || format!("{file}: recheck mismatch"))?;
        ensure(check["check"]["recomputed"]["width"] == first["branchwidth"], || format!("{file}: width differs"))?;
        round_trips += 1;
    }
    let invocations: [&[&str]; 3] = [
        &["duality", "fuzz", "--gen", "random-graph-cut", "--vertices", "4", "--edges", "5", "--count", "30", "--seed", "7"],
        &["gen", "--gen", "random-weighted-graph-cut", "--vertices", "6", "--count", "5", "--seed", "42"],
        &["wuf", "enumerate", "inst3.json", "-k", "2", "--limit", "5"],
    ];
    for args in invocations {
        let a = run_cli(args, p)?;
        let b = run_cli(args, p)?;
        ensure(a == b, || format!("{args:?}: outputs differ"))?;
    }
    Ok(format!("{round_trips} decompose/check round trips, {} repeated invocations identical", invocations.len()))
}

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let corpus = corpus(210, 8, 2024);
    let criteria: Vec<(&str, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("AC1", "branch-width oracle equivalence", Box::new(ac1)),
        ("AC2", "tree enumeration counts", Box::new(ac2)),
        ("AC3", "axiom checker definitional equivalence", Box::new(ac3)),
        ("AC4", "unconditional-mode equivalence", Box::new(|| ac4(&corpus))),
        ("AC5", "conditional principal witness", Box::new(|| ac5(&corpus))),
        ("AC6", "triangle conditional finding", Box::new(ac6)),
        ("AC7", "tangle cross-check", Box::new(|| ac7(&corpus))),
        ("AC8", "function verification", Box::new(ac8)),
        ("AC9", "CLI round trip and determinism", Box::new(ac9)),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let result = panic::catch_unwind(AssertUnwindSafe(|| check())).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {id} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {title}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
