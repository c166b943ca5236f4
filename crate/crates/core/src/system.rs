use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU32, Ordering};

use crate::error::{capacity, Error};
use crate::function::{FunctionSpec, Oracle, SetFunction};
use crate::report::{AxiomEntry, AxiomId, AxiomReport, Witness};
use crate::set::{canonical_subsets, ElementSet, GroundSet};
use crate::Result;

/// Largest ground set for routines that visit every subset once.
pub const SUBSET_CAP: usize = 16;
/// Largest ground set for routines that visit every pair of subsets.
pub const PAIRWISE_CAP: usize = 10;

const UNSET: u32 = u32::MAX;

/// A ground set with a set function on its subsets.
///
/// Evaluation is memoized in a table of atomics indexed by subset mask.
/// Concurrent readers are fine: a slot only ever receives the one value
/// the oracle computes for it.
pub struct ConnectivitySystem {
    ground: GroundSet,
    spec: FunctionSpec,
    oracle: Oracle,
    cache: Vec<AtomicU32>,
}

impl ConnectivitySystem {
    /// Builds a system after checking that `spec` fits `ground`.
    pub fn new(ground: GroundSet, spec: FunctionSpec) -> Result<Self> {
        validate(&ground, &spec)?;
        let oracle = Oracle::compile(&spec);
        let cache = (0..ground.subset_count()).map(|_| AtomicU32::new(UNSET)).collect();
        Ok(ConnectivitySystem {
            ground,
            spec,
            oracle,
            cache,
        })
    }

    /// Edge-cut system of a graph; the ground set is the edge list.
    /// Edges are labelled `u-v` unless `labels` is given.
    pub fn graph_cut(
        vertices: Vec<String>,
        edges: Vec<(usize, usize)>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(Error::Invalid(format!("edges[{i}]: vertex index out of range")));
            }
        }
        let labels = match labels {
            Some(l) => l,
            None => edges
                .iter()
                .map(|&(u, v)| format!("{}-{}", vertices[u], vertices[v]))
                .collect(),
        };
        let ground = GroundSet::new(labels)?;
        ConnectivitySystem::new(ground, FunctionSpec::GraphCut { vertices, edges })
    }

    /// Cut-rank system of a simple graph given by its 0/1 adjacency rows.
    pub fn cut_rank(ground: GroundSet, adjacency: &[Vec<u8>]) -> Result<Self> {
        let n = ground.len();
        if adjacency.len() != n {
            return Err(Error::Invalid(format!(
                "adjacency: expected {n} rows, found {}",
                adjacency.len()
            )));
        }
        let mut rows = alloc::vec![0u32; n];
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!(
                    "adjacency[{i}]: expected {n} entries, found {}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => rows[i] |= 1 << j,
                    _ => {
                        return Err(Error::Invalid(format!("adjacency[{i}][{j}]: entry must be 0 or 1")))
                    }
                }
            }
        }
        ConnectivitySystem::new(ground, FunctionSpec::CutRank { adjacency: rows })
    }

    /// Explicit table indexed by subset mask.
    pub fn table(ground: GroundSet, values: Vec<u32>) -> Result<Self> {
        ConnectivitySystem::new(ground, FunctionSpec::Table { values })
    }

    /// Table from `(set, value)` entries. Any subset may be omitted when its
    /// complement is given; its value is then inferred by symmetry. Entries
    /// given for both sides are taken as written. Repeating a set with a
    /// different value is an error.
    pub fn table_from_entries(ground: GroundSet, entries: &[(ElementSet, u32)]) -> Result<Self> {
        let n = ground.len();
        let mut values = alloc::vec![UNSET; ground.subset_count()];
        for (i, &(set, value)) in entries.iter().enumerate() {
            ground.check(set)?;
            if value == UNSET {
                return Err(Error::Invalid(format!("values[{i}]: value too large")));
            }
            let slot = &mut values[set.bits() as usize];
            if *slot != UNSET && *slot != value {
                return Err(Error::Invalid(format!(
                    "values[{i}]: conflicting value {value} for a set already given {}",
                    *slot
                )));
            }
            *slot = value;
        }
        for mask in 0..values.len() {
            if values[mask] == UNSET {
                let comp = ElementSet::from_bits(mask as u32).complement_in(n).bits() as usize;
                if values[comp] == UNSET {
                    let set = ElementSet::from_bits(mask as u32);
                    return Err(Error::Invalid(format!(
                        "values: no value for {:?} or its complement",
                        ground.labels_of(set)
                    )));
                }
                values[mask] = values[comp];
            }
        }
        ConnectivitySystem::table(ground, values)
    }

    /// Weighted edge-cut system; the ground set is the vertex set.
    pub fn weighted_graph_cut(ground: GroundSet, edges: Vec<(usize, usize, u32)>) -> Result<Self> {
        ConnectivitySystem::new(ground, FunctionSpec::WeightedGraphCut { edges })
    }

    pub fn custom(ground: GroundSet, f: Arc<dyn SetFunction>) -> Result<Self> {
        ConnectivitySystem::new(ground, FunctionSpec::Custom(f))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn spec(&self) -> &FunctionSpec {
        &self.spec
    }

    /// `n = |X|`.
    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full(&self) -> ElementSet {
        self.ground.full()
    }

    pub fn complement(&self, set: ElementSet) -> ElementSet {
        self.ground.complement(set)
    }

    /// `f(A)`, after checking that `A ⊆ X`.
    pub fn evaluate(&self, set: ElementSet) -> Result<u32> {
        self.ground.check(set)?;
        Ok(self.value(set))
    }

    /// `f(A)` without the subset check. `set` must be a subset of `X`.
    pub fn value(&self, set: ElementSet) -> u32 {
        debug_assert!(set.is_subset(self.full()));
        let slot = &self.cache[set.bits() as usize];
        let cached = slot.load(Ordering::Relaxed);
        if cached != UNSET {
            return cached;
        }
        let v = self.oracle.value(set, self.full());
        slot.store(v, Ordering::Relaxed);
        v
    }

    pub fn clear_cache(&self) {
        for slot in &self.cache {
            slot.store(UNSET, Ordering::Relaxed);
        }
    }

    /// `f` on every subset, indexed by mask.
    pub fn values(&self) -> Vec<u32> {
        (0..self.ground.subset_count() as u32)
            .map(|m| self.value(ElementSet::from_bits(m)))
            .collect()
    }

    /// `max f(A)` over all subsets.
    pub fn max_value(&self) -> Result<u32> {
        capacity("maximum over subsets", self.len(), SUBSET_CAP)?;
        Ok(self.values().into_iter().max().unwrap_or(0))
    }

    /// `f(A) = f(X \ A)` for every `A`. Each violating complementary pair is
    /// reported once, as its canonically smaller side with both values.
    pub fn verify_symmetry(&self) -> Result<AxiomReport> {
        capacity("symmetry check", self.len(), SUBSET_CAP)?;
        let mut witnesses = Vec::new();
        for a in canonical_subsets(self.len()) {
            let c = self.complement(a);
            if a <= c {
                let (fa, fc) = (self.value(a), self.value(c));
                if fa != fc {
                    witnesses.push(Witness::pair(a, c).with_values(&[fa, fc]));
                }
            }
        }
        Ok(AxiomReport::new(alloc::vec![AxiomEntry::from_witnesses(
            AxiomId::Symmetry,
            witnesses
        )]))
    }

    /// `f(A) + f(B) >= f(A ∩ B) + f(A ∪ B)` for every pair. Witnesses carry
    /// `f(A), f(B), f(A ∩ B), f(A ∪ B)`.
    pub fn verify_submodularity(&self) -> Result<AxiomReport> {
        let witnesses = self.pairwise("submodularity check", |a, b| {
            let (i, u) = (a.intersection(b), a.union(b));
            let vals = [self.value(a), self.value(b), self.value(i), self.value(u)];
            (u64::from(vals[0]) + u64::from(vals[1]) < u64::from(vals[2]) + u64::from(vals[3])).then_some(vals)
        })?;
        Ok(AxiomReport::new(alloc::vec![AxiomEntry::from_witnesses(
            AxiomId::Submodularity,
            witnesses
        )]))
    }

    /// The two standard consequences of symmetric submodularity:
    /// `f(A) >= f(∅) = f(X)` and `f(A) + f(B) >= f(A \ B) + f(B \ A)`.
    pub fn verify_consequences(&self) -> Result<AxiomReport> {
        capacity("posimodularity check", self.len(), PAIRWISE_CAP)?;
        let empty = ElementSet::EMPTY;
        let (f_empty, f_full) = (self.value(empty), self.value(self.full()));
        let mut minimum = Vec::new();
        if f_empty != f_full {
            minimum.push(Witness::pair(empty, self.full()).with_values(&[f_empty, f_full]));
        }
        for a in canonical_subsets(self.len()) {
            let fa = self.value(a);
            if fa < f_empty {
                minimum.push(Witness::set(a).with_values(&[fa, f_empty]));
            }
        }
        let diff = self.pairwise("posimodularity check", |a, b| {
            let (ab, ba) = (a.difference(b), b.difference(a));
            let vals = [self.value(a), self.value(b), self.value(ab), self.value(ba)];
            (u64::from(vals[0]) + u64::from(vals[1]) < u64::from(vals[2]) + u64::from(vals[3])).then_some(vals)
        })?;
        Ok(AxiomReport::new(alloc::vec![
            AxiomEntry::from_witnesses(AxiomId::MinimumAtEmpty, minimum),
            AxiomEntry::from_witnesses(AxiomId::Posimodularity, diff),
        ]))
    }

    /// Symmetry, submodularity and their consequences in one report.
    pub fn verify_all(&self) -> Result<AxiomReport> {
        Ok(self
            .verify_symmetry()?
            .merge(self.verify_submodularity()?)
            .merge(self.verify_consequences()?))
    }

    /// `f(A) <= k`.
    pub fn is_k_efficient(&self, set: ElementSet, k: u32) -> Result<bool> {
        Ok(self.evaluate(set)? <= k)
    }

    /// Every `A` with `f(A) <= k`, in canonical subset order.
    pub fn enumerate_k_efficient(&self, k: u32) -> Result<Vec<ElementSet>> {
        capacity("k-efficient enumeration", self.len(), SUBSET_CAP)?;
        Ok(canonical_subsets(self.len())
            .into_iter()
            .filter(|&a| self.value(a) <= k)
            .collect())
    }

    /// Runs `check` on unordered pairs `A <= B` in canonical order and
    /// collects the violations.
    fn pairwise<F>(&self, what: &'static str, check: F) -> Result<Vec<Witness>>
    where
        F: Fn(ElementSet, ElementSet) -> Option<[u32; 4]>,
    {
        capacity(what, self.len(), PAIRWISE_CAP)?;
        let order = canonical_subsets(self.len());
        let mut witnesses = Vec::new();
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[i..] {
                if let Some(vals) = check(a, b) {
                    witnesses.push(Witness::pair(a, b).with_values(&vals));
                }
            }
        }
        Ok(witnesses)
    }
}

impl Clone for ConnectivitySystem {
    fn clone(&self) -> Self {
        ConnectivitySystem::new(self.ground.clone(), self.spec.clone())
            .expect("a valid system stays valid")
    }
}

impl fmt::Debug for ConnectivitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConnectivitySystem")
            .field("ground", &self.ground)
            .field("spec", &self.spec)
            .finish()
    }
}

fn validate(ground: &GroundSet, spec: &FunctionSpec) -> Result<()> {
    let n = ground.len();
    match spec {
        FunctionSpec::GraphCut { vertices, edges } => {
            if edges.len() != n {
                return Err(Error::Invalid(format!(
                    "graph-cut: {} edges but {n} ground-set labels",
                    edges.len()
                )));
            }
            for (i, &(u, v)) in edges.iter().enumerate() {
                if u >= vertices.len() || v >= vertices.len() {
                    return Err(Error::Invalid(format!("edges[{i}]: vertex index out of range")));
                }
            }
        }
        FunctionSpec::CutRank { adjacency } => {
            if adjacency.len() != n {
                return Err(Error::Invalid(format!(
                    "adjacency: expected {n} rows, found {}",
                    adjacency.len()
                )));
            }
            let full = ground.full().bits();
            for (i, &row) in adjacency.iter().enumerate() {
                if row & !full != 0 {
                    return Err(Error::Invalid(format!("adjacency[{i}]: column out of range")));
                }
                if row >> i & 1 == 1 {
                    return Err(Error::Invalid(format!("adjacency[{i}][{i}]: diagonal must be 0")));
                }
                for j in 0..n {
                    if (row >> j & 1) != (adjacency[j] >> i & 1) {
                        return Err(Error::Invalid(format!(
                            "adjacency[{i}][{j}]: matrix is not symmetric"
                        )));
                    }
                }
            }
        }
        FunctionSpec::Table { values } => {
            if values.len() != ground.subset_count() {
                return Err(Error::Invalid(format!(
                    "table: expected {} values, found {}",
                    ground.subset_count(),
                    values.len()
                )));
            }
            if let Some(i) = values.iter().position(|&v| v == UNSET) {
                return Err(Error::Invalid(format!("values[{i}]: value too large")));
            }
        }
        FunctionSpec::WeightedGraphCut { edges } => {
            for (i, &(u, v, _)) in edges.iter().enumerate() {
                if u >= n || v >= n {
                    return Err(Error::Invalid(format!("edges[{i}]: vertex index out of range")));
                }
                if u == v {
                    return Err(Error::Invalid(format!("edges[{i}]: self-loop")));
                }
            }
        }
        FunctionSpec::Custom(_) => {}
    }
    Ok(())
}
