use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::set::ElementSet;

/// A user-supplied set function on the subsets of a ground set.
///
/// Implementations must be deterministic. Nothing here assumes symmetry or
/// submodularity; run the `verify_*` routines on the resulting system.
pub trait SetFunction: Send + Sync {
    fn value(&self, set: ElementSet) -> u32;
}

impl<F> SetFunction for F
where
    F: Fn(ElementSet) -> u32 + Send + Sync,
{
    fn value(&self, set: ElementSet) -> u32 {
        self(set)
    }
}

/// How `f` is defined.
#[derive(Clone)]
pub enum FunctionSpec {
    /// Ground set = edge list of a graph. `f(A)` counts vertices incident
    /// both to an edge of `A` and to an edge outside `A`.
    GraphCut {
        vertices: Vec<String>,
        edges: Vec<(usize, usize)>,
    },
    /// Ground set = vertices of a simple graph given by a symmetric 0/1
    /// adjacency matrix (row `i` packed into bit `j`). `f(A)` is the rank
    /// over GF(2) of the submatrix with rows `A` and columns `X \ A`.
    CutRank { adjacency: Vec<u32> },
    /// Explicit value for every subset, indexed by subset mask.
    Table { values: Vec<u32> },
    /// Ground set = vertices; `f(A)` is the total weight of edges with one
    /// endpoint in `A` and the other in `X \ A`.
    WeightedGraphCut { edges: Vec<(usize, usize, u32)> },
    /// Arbitrary oracle.
    Custom(Arc<dyn SetFunction>),
}

impl FunctionSpec {
    /// Short kind name, matching the instance-file `type` field.
    pub fn kind(&self) -> &'static str {
        match self {
            FunctionSpec::GraphCut { .. } => "graph-cut",
            FunctionSpec::CutRank { .. } => "cut-rank",
            FunctionSpec::Table { .. } => "table",
            FunctionSpec::WeightedGraphCut { .. } => "weighted-graph-cut",
            FunctionSpec::Custom(_) => "custom",
        }
    }
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::GraphCut { vertices, edges } => f
                .debug_struct("GraphCut")
                .field("vertices", vertices)
                .field("edges", edges)
                .finish(),
            FunctionSpec::CutRank { adjacency } => {
                f.debug_struct("CutRank").field("adjacency", adjacency).finish()
            }
            FunctionSpec::Table { values } => f.debug_struct("Table").field("values", values).finish(),
            FunctionSpec::WeightedGraphCut { edges } => f
                .debug_struct("WeightedGraphCut")
                .field("edges", edges)
                .finish(),
            FunctionSpec::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Rank over GF(2) of a matrix given as packed bit rows. The rows are
/// reduced in place; an empty matrix has rank 0.
pub fn gf2_rank(rows: &mut [u32]) -> usize {
    let mut rank = 0;
    for col in 0..32 {
        let bit = 1u32 << col;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank];
        for r in rank + 1..rows.len() {
            if rows[r] & bit != 0 {
                rows[r] ^= p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Evaluation form of a [`FunctionSpec`], precomputed once per system.
pub(crate) enum Oracle {
    /// Per-vertex incidence masks over the edge ground set.
    Incidence(Vec<u32>),
    CutRank(Vec<u32>),
    Table(Vec<u32>),
    Weighted(Vec<(usize, usize, u32)>),
    Custom(Arc<dyn SetFunction>),
}

impl Oracle {
    pub(crate) fn compile(spec: &FunctionSpec) -> Self {
        match spec {
            FunctionSpec::GraphCut { vertices, edges } => {
                let mut inc = alloc::vec![0u32; vertices.len()];
                for (e, &(u, v)) in edges.iter().enumerate() {
                    inc[u] |= 1 << e;
                    inc[v] |= 1 << e;
                }
                inc.retain(|&m| m != 0);
                Oracle::Incidence(inc)
            }
            FunctionSpec::CutRank { adjacency } => Oracle::CutRank(adjacency.clone()),
            FunctionSpec::Table { values } => Oracle::Table(values.clone()),
            FunctionSpec::WeightedGraphCut { edges } => Oracle::Weighted(edges.clone()),
            FunctionSpec::Custom(f) => Oracle::Custom(f.clone()),
        }
    }

    pub(crate) fn value(&self, set: ElementSet, full: ElementSet) -> u32 {
        let a = set.bits();
        let rest = full.bits() & !a;
        match self {
            Oracle::Incidence(inc) => inc
                .iter()
                .filter(|&&m| m & a != 0 && m & rest != 0)
                .count() as u32,
            Oracle::CutRank(adj) => {
                let mut rows: Vec<u32> = set.iter().map(|i| adj[i] & rest).collect();
                gf2_rank(&mut rows) as u32
            }
            Oracle::Table(values) => values[a as usize],
            Oracle::Weighted(edges) => edges
                .iter()
                .filter(|&&(u, v, _)| set.contains(u) != set.contains(v))
                .map(|&(_, _, w)| w)
                .sum(),
            Oracle::Custom(f) => f.value(set),
        }
    }
}
