//! Interpretation-matrix sweeps over a corpus, with findings written to
//! disk as self-contained reproduction directories.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use connsys_core::duality::{run_matrix, Claim, InterpretationMatrix, TheoremVerdict};
use connsys_core::filter::{is_weak_ultrafilter, FeMode};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::format::{
    check_decomposition, decomposition_json, family_json, instance_json, parse_config, parse_family,
    parse_instance, read_text, verdict_json, write_json, Instance,
};

/// Matrices for every instance, in corpus order. With `jobs`, instances
/// are processed on a pool of that many threads.
pub fn run(corpus: &[Instance], jobs: Option<usize>) -> Result<Vec<InterpretationMatrix>> {
    let one = |inst: &Instance| run_matrix(&inst.system, &inst.name).map_err(Error::from);
    match jobs {
        Some(j) if j != 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::parse(format!("jobs: {e}")))?;
            pool.install(|| corpus.par_iter().map(one).collect())
        }
        _ => corpus.iter().map(one).collect(),
    }
}

/// A violated verdict together with the instance it came from.
#[derive(Debug, Clone)]
pub struct Finding<'a> {
    pub instance: &'a Instance,
    pub verdict: &'a TheoremVerdict,
}

impl Finding<'_> {
    pub fn dir_name(&self) -> String {
        let v = self.verdict;
        let name: String = self
            .instance
            .name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || "._-".contains(c) { c } else { '_' })
            .collect();
        format!(
            "{name}-k{}-{}-fp{}-{}",
            v.k,
            v.config.fe_mode.as_str(),
            u8::from(v.config.require_fp),
            v.claim.as_str()
        )
    }
}

/// Violations across all matrices, optionally restricted to one FE mode.
pub fn findings<'a>(
    corpus: &'a [Instance],
    matrices: &'a [InterpretationMatrix],
    fe_mode: Option<FeMode>,
) -> Vec<Finding<'a>> {
    corpus
        .iter()
        .zip(matrices)
        .flat_map(|(instance, m)| {
            m.violations()
                .filter(move |v| fe_mode.is_none_or(|f| v.config.fe_mode == f))
                .map(move |verdict| Finding { instance, verdict })
        })
        .collect()
}

/// Per-cell violation counts.
pub fn summary_json(
    corpus: &[Instance],
    matrices: &[InterpretationMatrix],
    fe_mode: Option<FeMode>,
    findings_dir: Option<&Path>,
) -> Value {
    let mut counts: BTreeMap<(u8, bool, u32), [u64; 2]> = BTreeMap::new();
    for m in matrices {
        for c in m.cells.iter().filter(|c| fe_mode.is_none_or(|f| c.fe_mode == f)) {
            let mode = match c.fe_mode {
                FeMode::Conditional => 0,
                FeMode::Unconditional => 1,
            };
            let e = counts.entry((mode, c.require_fp, c.k)).or_default();
            e[0] += u64::from(!c.theorem6.consistent);
            e[1] += u64::from(!c.theorem7.consistent);
        }
    }
    let cells: Vec<Value> = counts
        .into_iter()
        .map(|((mode, fp, k), [t6, t7])| {
            json!({
                "fe_mode": if mode == 0 { "conditional" } else { "unconditional" },
                "require_fp": fp,
                "k": k,
                "theorem6_violations": t6,
                "theorem7_violations": t7,
            })
        })
        .collect();
    let found = findings(corpus, matrices, fe_mode);
    json!({
        "corpus_size": corpus.len(),
        "cells": cells,
        "findings_dir": findings_dir.map(|p| p.display().to_string()),
        "findings": found.iter().map(Finding::dir_name).collect::<Vec<_>>(),
        "status": if found.is_empty() { "clean" } else { "violations" },
    })
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes one directory per finding under `dir`: `instance.json`,
/// `family.json`, `decomposition.json` and `verdict.json`.
pub fn write_findings(findings: &[Finding<'_>], dir: &Path) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let mut out = Vec::with_capacity(findings.len());
    for f in findings {
        let path = dir.join(f.dir_name());
        create_dir(&path)?;
        let sys = &f.instance.system;
        write_json(&path.join("instance.json"), &instance_json(f.instance))?;
        if let Some(family) = &f.verdict.family {
            write_json(&path.join("family.json"), &family_json(sys.ground(), family))?;
        }
        write_json(&path.join("decomposition.json"), &decomposition_json(sys, &f.verdict.tree))?;
        let mut verdict = verdict_json(f.verdict);
        verdict["source"] = f.instance.source.clone().unwrap_or(Value::Null);
        write_json(&path.join("verdict.json"), &verdict)?;
        out.push(path);
    }
    Ok(out)
}

/// Re-derives a finding from its files alone: the stored family must pass
/// the recorded axioms, the stored tree must have the recorded width, and
/// that width must contradict the recorded claim.
pub fn reverify_finding(dir: &Path) -> Result<bool> {
    let inst = parse_instance(&read_text(&dir.join("instance.json"))?, "finding")?;
    let verdict: Value = serde_json::from_str(&read_text(&dir.join("verdict.json"))?)
        .map_err(|e| Error::parse(format!("verdict: {e}")))?;
    let config = parse_config(&verdict["config"])?;
    let family = parse_family(&read_text(&dir.join("family.json"))?, inst.system.ground())?;
    if !is_weak_ultrafilter(&family, &inst.system, &config)?.overall {
        return Ok(false);
    }
    let check = check_decomposition(&read_text(&dir.join("decomposition.json"))?, &inst.system)?;
    if !check.matches {
        return Ok(false);
    }
    // The tree only bounds branch-width from above; the exact value comes
    // from the DP.
    let (bw, _) = connsys_core::decomposition::exact_branchwidth(&inst.system)?;
    if check.width != bw || verdict["branchwidth"] != json!(bw) {
        return Ok(false);
    }
    let k = config.order_k;
    Ok(match verdict["claim"].as_str() {
        Some(c) if c == Claim::UpperBound.as_str() => bw > k,
        Some(c) if c == Claim::Exclusion.as_str() => bw == k + 1,
        _ => false,
    })
}
