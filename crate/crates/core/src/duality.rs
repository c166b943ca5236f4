//! Audits of the two duality claims between weak ultrafilters and
//! branch-width on concrete instances:
//!
//! - *upper bound*: if a weak ultrafilter of order `k + 1` exists then the
//!   branch-width is at most `k`;
//! - *exclusion*: if the branch-width is exactly `k + 1` then no weak
//!   ultrafilter of order `k + 1` exists.
//!
//! The second is the first restricted to `bw = k + 1`. Whether either holds
//! depends on how FE is quantified, so every verdict records the
//! [`SearchConfig`] it was computed under. A violated claim is a finding,
//! not an error.

use alloc::string::String;
use alloc::vec::Vec;

use crate::decomposition::{exact_branchwidth, DecompositionTree};
use crate::error::Error;
use crate::filter::{is_weak_ultrafilter, search, FeMode, SearchConfig, SetFamily};
use crate::system::ConnectivitySystem;
use crate::Result;

/// `{A : X \ A ∈ W}` for a weak ultrafilter `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualIdeal {
    pub ideal: SetFamily,
}

pub fn dual_ideal(family: &SetFamily, system: &ConnectivitySystem) -> Result<DualIdeal> {
    if family.ground_len() != system.len() {
        return Err(Error::GroundMismatch);
    }
    Ok(DualIdeal {
        ideal: family.complements(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// A weak ultrafilter of order `k + 1` forces branch-width `<= k`.
    UpperBound,
    /// Branch-width `k + 1` excludes weak ultrafilters of order `k + 1`.
    Exclusion,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::UpperBound => "theorem6",
            Claim::Exclusion => "theorem7",
        }
    }
}

/// Outcome of auditing one claim at one `k` under one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub claim: Claim,
    pub instance: String,
    pub k: u32,
    pub config: SearchConfig,
    /// A weak ultrafilter of order `k + 1`, when one exists.
    pub family: Option<SetFamily>,
    pub branchwidth: u32,
    /// A tree of width `branchwidth`.
    pub tree: DecompositionTree,
    /// Always true for the upper bound; `branchwidth == k + 1` for the
    /// exclusion claim.
    pub hypothesis_met: bool,
    pub consistent: bool,
}

impl TheoremVerdict {
    pub fn wuf_exists(&self) -> bool {
        self.family.is_some()
    }

    pub fn violated_claim(&self) -> Option<Claim> {
        (!self.consistent).then_some(self.claim)
    }

    fn build(
        claim: Claim,
        instance: &str,
        config: SearchConfig,
        family: Option<SetFamily>,
        branchwidth: u32,
        tree: DecompositionTree,
    ) -> Self {
        let k = config.order_k;
        let (hypothesis_met, consistent) = judge(claim, k, family.is_some(), branchwidth);
        TheoremVerdict {
            claim,
            instance: instance.into(),
            k,
            config,
            family,
            branchwidth,
            tree,
            hypothesis_met,
            consistent,
        }
    }

    /// Recomputes the verdict from its stored witnesses: the family must
    /// still satisfy the axioms, the tree must still have the recorded
    /// width, and the consistency flag must follow from those two facts.
    pub fn recheck(&self, system: &ConnectivitySystem) -> Result<bool> {
        if let Some(family) = &self.family {
            if !is_weak_ultrafilter(family, system, &self.config)?.overall {
                return Ok(false);
            }
        }
        if self.tree.width_of_tree(system)?.width != self.branchwidth {
            return Ok(false);
        }
        let (hyp, consistent) = judge(self.claim, self.k, self.wuf_exists(), self.branchwidth);
        Ok(hyp == self.hypothesis_met && consistent == self.consistent)
    }
}

fn judge(claim: Claim, k: u32, wuf_exists: bool, branchwidth: u32) -> (bool, bool) {
    match claim {
        Claim::UpperBound => (true, !wuf_exists || branchwidth <= k),
        Claim::Exclusion => {
            let hyp = branchwidth == k + 1;
            (hyp, !(hyp && wuf_exists))
        }
    }
}

/// Upper-bound audit: searches for a weak ultrafilter under `config` and
/// compares with the exact branch-width.
pub fn check_theorem6(system: &ConnectivitySystem, instance: &str, config: &SearchConfig) -> Result<TheoremVerdict> {
    let (bw, tree) = exact_branchwidth(system)?;
    let family = search(system, config)?;
    Ok(TheoremVerdict::build(Claim::UpperBound, instance, *config, family, bw, tree))
}

/// Exclusion audit. When the branch-width is not `k + 1` the verdict is
/// vacuously consistent.
pub fn check_theorem7(system: &ConnectivitySystem, instance: &str, config: &SearchConfig) -> Result<TheoremVerdict> {
    let (bw, tree) = exact_branchwidth(system)?;
    let family = search(system, config)?;
    Ok(TheoremVerdict::build(Claim::Exclusion, instance, *config, family, bw, tree))
}

/// Both audits for one `(k, fe_mode, require_fp)` combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCell {
    pub k: u32,
    pub fe_mode: FeMode,
    pub require_fp: bool,
    pub theorem6: TheoremVerdict,
    pub theorem7: TheoremVerdict,
}

/// The interpretation sweep for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpretationMatrix {
    pub instance: String,
    pub branchwidth: u32,
    pub max_value: u32,
    pub cells: Vec<MatrixCell>,
}

impl InterpretationMatrix {
    pub fn verdicts(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.cells.iter().flat_map(|c| [&c.theorem6, &c.theorem7])
    }

    pub fn violations(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.verdicts().filter(|v| !v.consistent)
    }
}

/// Every `k` in `0..=max f`, both FE readings, with and without FP; cells
/// ordered by `k`, then mode (conditional first), then FP (off first).
pub fn run_matrix(system: &ConnectivitySystem, instance: &str) -> Result<InterpretationMatrix> {
    let (bw, tree) = exact_branchwidth(system)?;
    let max_value = system.max_value()?;
    let mut cells = Vec::new();
    for k in 0..=max_value {
        for fe_mode in [FeMode::Conditional, FeMode::Unconditional] {
            for require_fp in [false, true] {
                let config = SearchConfig::weak(k, fe_mode, require_fp);
                let family = search(system, &config)?;
                cells.push(MatrixCell {
                    k,
                    fe_mode,
                    require_fp,
                    theorem6: TheoremVerdict::build(
                        Claim::UpperBound,
                        instance,
                        config,
                        family.clone(),
                        bw,
                        tree.clone(),
                    ),
                    theorem7: TheoremVerdict::build(Claim::Exclusion, instance, config, family, bw, tree.clone()),
                });
            }
        }
    }
    Ok(InterpretationMatrix {
        instance: instance.into(),
        branchwidth: bw,
        max_value,
        cells,
    })
}
