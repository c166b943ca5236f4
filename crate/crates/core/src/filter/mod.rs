//! Weak ultrafilters of order `k + 1` on a connectivity system.
//!
//! A family `W` of subsets is checked against
//!
//! | id  | condition |
//! |-----|-----------|
//! | FB  | every member `A` has `f(A) <= k` |
//! | FH  | `A ∈ W`, `A ⊊ B`, `f(B) <= k` implies `B ∈ W` |
//! | WIS | `A, B ∈ W` (possibly equal) with `f(A ∩ B) <= k` intersect |
//! | FW  | `∅ ∉ W` |
//! | FE  | `A ∈ W` or `X \ A ∈ W` for every `A` with `f(A) <= k` (conditional) or every `A` (unconditional) |
//! | FP  | no singleton is a member (optional) |
//! | FS  | `A, B ∈ W` with `f(A ∩ B) <= k` implies `A ∩ B ∈ W` (ultrafilter variant) |
//!
//! together with the classical Boolean-algebra axioms F1–F4 and a tangle
//! axiom set used as a cross-check. [`search`] decides existence by
//! backtracking over complementary pairs of k-efficient sets;
//! [`brute_force_enumerate`] is the definitional oracle.

mod axioms;
mod brute;
mod family;
mod search;

pub use axioms::{check_axiom, check_classical, check_tangle, is_exclusive, is_weak_ultrafilter};
pub use brute::{brute_force_enumerate, BRUTE_FORCE_CAP};
pub use family::{principal_family, SetFamily};
pub use search::{enumerate, max_order, search, search_tangle, Enumeration, OrderScan, SEARCH_CAP};

use core::fmt;

/// How the FE axiom is quantified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FeMode {
    /// Only sets with `f(A) <= k` must be decided.
    Conditional,
    /// Every subset must be decided.
    Unconditional,
}

/// Which axiom list a family is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomSet {
    /// FB, FH, WIS, FW, FE (+ FP when required).
    WeakUltrafilter,
    /// The weak-ultrafilter axioms plus FS.
    UltrafilterFs,
    /// TB, TX, T3, FW; ignores `require_fp`.
    Tangle,
    /// F1–F4 on the whole power set; ignores `order_k`, `fe_mode` and
    /// `require_fp`.
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SearchConfig {
    /// The `k` of "order `k + 1`".
    pub order_k: u32,
    pub fe_mode: FeMode,
    pub require_fp: bool,
    pub axiom_set: AxiomSet,
}

impl SearchConfig {
    pub fn weak(order_k: u32, fe_mode: FeMode, require_fp: bool) -> Self {
        SearchConfig {
            order_k,
            fe_mode,
            require_fp,
            axiom_set: AxiomSet::WeakUltrafilter,
        }
    }

    pub fn tangle(order_k: u32) -> Self {
        SearchConfig {
            order_k,
            fe_mode: FeMode::Conditional,
            require_fp: false,
            axiom_set: AxiomSet::Tangle,
        }
    }

    pub fn classical() -> Self {
        SearchConfig {
            order_k: 0,
            fe_mode: FeMode::Unconditional,
            require_fp: false,
            axiom_set: AxiomSet::Classical,
        }
    }

    pub fn with_k(mut self, order_k: u32) -> Self {
        self.order_k = order_k;
        self
    }
}

impl FeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FeMode::Conditional => "conditional",
            FeMode::Unconditional => "unconditional",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "conditional" => Some(FeMode::Conditional),
            "unconditional" => Some(FeMode::Unconditional),
            _ => None,
        }
    }
}

impl AxiomSet {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomSet::WeakUltrafilter => "weak-ultrafilter",
            AxiomSet::UltrafilterFs => "ultrafilter-fs",
            AxiomSet::Tangle => "tangle",
            AxiomSet::Classical => "classical",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "weak-ultrafilter" => Some(AxiomSet::WeakUltrafilter),
            "ultrafilter-fs" => Some(AxiomSet::UltrafilterFs),
            "tangle" => Some(AxiomSet::Tangle),
            "classical" => Some(AxiomSet::Classical),
            _ => None,
        }
    }
}

impl fmt::Display for FeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for AxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
