use alloc::vec::Vec;
use core::fmt;

use crate::set::ElementSet;

/// Identifies one checked property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// `f(A) = f(X \ A)`.
    Symmetry,
    /// `f(A) + f(B) >= f(A ∩ B) + f(A ∪ B)`.
    Submodularity,
    /// `f(A) >= f(∅) = f(X)`.
    MinimumAtEmpty,
    /// `f(A) + f(B) >= f(A \ B) + f(B \ A)`.
    Posimodularity,
    /// Every member is k-efficient.
    FB,
    /// Upward closure among k-efficient supersets.
    FH,
    /// Members with k-efficient intersection intersect.
    WIS,
    /// The empty set is not a member.
    FW,
    /// Every (k-efficient) set or its complement is a member.
    FE,
    /// No singleton is a member.
    FP,
    /// k-efficient intersections of members are members.
    FS,
    /// Classical intersection closure.
    F1,
    /// Classical upward closure.
    F2,
    /// Classical: the empty set is not a member.
    F3,
    /// Classical: every set or its complement is a member.
    F4,
    /// Tangle: every member is k-efficient.
    TangleBound,
    /// Tangle: exactly one side of every k-efficient pair is a member.
    TangleExactlyOne,
    /// Tangle: any three members have a common element.
    TangleTriple,
}

impl AxiomId {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomId::Symmetry => "SYM",
            AxiomId::Submodularity => "SUBMOD",
            AxiomId::MinimumAtEmpty => "MIN-EMPTY",
            AxiomId::Posimodularity => "POSIMOD",
            AxiomId::FB => "FB",
            AxiomId::FH => "FH",
            AxiomId::WIS => "WIS",
            AxiomId::FW => "FW",
            AxiomId::FE => "FE",
            AxiomId::FP => "FP",
            AxiomId::FS => "FS",
            AxiomId::F1 => "F1",
            AxiomId::F2 => "F2",
            AxiomId::F3 => "F3",
            AxiomId::F4 => "F4",
            AxiomId::TangleBound => "TB",
            AxiomId::TangleExactlyOne => "TX",
            AxiomId::TangleTriple => "T3",
        }
    }

    pub const ALL: [AxiomId; 18] = [
        AxiomId::Symmetry,
        AxiomId::Submodularity,
        AxiomId::MinimumAtEmpty,
        AxiomId::Posimodularity,
        AxiomId::FB,
        AxiomId::FH,
        AxiomId::WIS,
        AxiomId::FW,
        AxiomId::FE,
        AxiomId::FP,
        AxiomId::FS,
        AxiomId::F1,
        AxiomId::F2,
        AxiomId::F3,
        AxiomId::F4,
        AxiomId::TangleBound,
        AxiomId::TangleExactlyOne,
        AxiomId::TangleTriple,
    ];

    pub fn parse(s: &str) -> Option<AxiomId> {
        AxiomId::ALL.into_iter().find(|a| a.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An offending set, pair or triple, with the function values involved
/// when they explain the violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub sets: Vec<ElementSet>,
    pub values: Vec<u32>,
}

impl Witness {
    pub fn set(a: ElementSet) -> Self {
        Witness {
            sets: alloc::vec![a],
            values: Vec::new(),
        }
    }

    pub fn pair(a: ElementSet, b: ElementSet) -> Self {
        Witness {
            sets: alloc::vec![a, b],
            values: Vec::new(),
        }
    }

    pub fn with_values(mut self, values: &[u32]) -> Self {
        self.values = values.to_vec();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomEntry {
    pub id: AxiomId,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

impl AxiomEntry {
    pub(crate) fn from_witnesses(id: AxiomId, witnesses: Vec<Witness>) -> Self {
        AxiomEntry {
            id,
            pass: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Per-axiom results; `overall` is the conjunction of the entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
    pub overall: bool,
}

impl AxiomReport {
    pub fn new(entries: Vec<AxiomEntry>) -> Self {
        let overall = entries.iter().all(|e| e.pass);
        AxiomReport { entries, overall }
    }

    pub fn entry(&self, id: AxiomId) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn passes(&self, id: AxiomId) -> bool {
        self.entry(id).is_some_and(|e| e.pass)
    }

    pub fn failing(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn merge(mut self, other: AxiomReport) -> Self {
        self.entries.extend(other.entries);
        self.overall = self.entries.iter().all(|e| e.pass);
        self
    }
}
