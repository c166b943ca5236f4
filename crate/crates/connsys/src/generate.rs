//! Seeded random instances.
//!
//! Instance `i` of a batch draws from a ChaCha8 stream keyed by the batch
//! seed with stream number `i`, so any instance can be regenerated alone
//! from `(seed, index)` and the output does not depend on batch size.

use connsys_core::{ConnectivitySystem, GroundSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::format::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Simple graph on `vertices` vertices; the ground set is its edges.
    GraphCut,
    /// Weighted graph on `vertices` vertices; the ground set is its vertices.
    WeightedGraphCut,
    /// Random simple graph; cut-rank over its vertices.
    CutRank,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::GraphCut => "random-graph-cut",
            GeneratorKind::WeightedGraphCut => "random-weighted-graph-cut",
            GeneratorKind::CutRank => "random-cut-rank",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "random-graph-cut" | "graph-cut" => Some(GeneratorKind::GraphCut),
            "random-weighted-graph-cut" | "weighted-graph-cut" => Some(GeneratorKind::WeightedGraphCut),
            "random-cut-rank" | "cut-rank" => Some(GeneratorKind::CutRank),
            _ => None,
        }
    }
}

/// How many edges each random graph gets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeCount {
    Exact(usize),
    /// Each pair kept with this probability.
    Density(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub kind: GeneratorKind,
    pub vertices: usize,
    pub edges: EdgeCount,
    /// Inclusive weight range for weighted graphs.
    pub max_weight: u32,
    pub seed: u64,
    pub count: usize,
}

impl GeneratorConfig {
    pub fn new(kind: GeneratorKind, vertices: usize, edges: EdgeCount, seed: u64, count: usize) -> Self {
        GeneratorConfig {
            kind,
            vertices,
            edges,
            max_weight: 4,
            seed,
            count,
        }
    }
}

fn random_pairs(rng: &mut ChaCha8Rng, n: usize, edges: EdgeCount) -> Result<Vec<(usize, usize)>> {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut chosen = match edges {
        EdgeCount::Exact(m) => {
            if m > pairs.len() {
                return Err(Error::parse(format!(
                    "edges: a simple graph on {n} vertices has at most {} edges, asked for {m}",
                    pairs.len()
                )));
            }
            pairs.shuffle(rng);
            pairs.truncate(m);
            pairs
        }
        EdgeCount::Density(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::parse(format!("density: {p} is not in [0, 1]")));
            }
            pairs.into_iter().filter(|_| rng.gen_bool(p)).collect()
        }
    };
    chosen.sort_unstable();
    Ok(chosen)
}

/// Instance `index` of the batch described by `config`.
pub fn generate_one(config: &GeneratorConfig, index: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let n = config.vertices;
    let pairs = random_pairs(&mut rng, n, config.edges)?;
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let system = match config.kind {
        GeneratorKind::GraphCut => ConnectivitySystem::graph_cut(names, pairs, None)?,
        GeneratorKind::WeightedGraphCut => {
            if config.max_weight == 0 {
                return Err(Error::parse("max-weight: must be at least 1"));
            }
            let weighted = pairs
                .into_iter()
                .map(|(u, v)| (u, v, rng.gen_range(1..=config.max_weight)))
                .collect();
            ConnectivitySystem::weighted_graph_cut(GroundSet::new(names)?, weighted)?
        }
        GeneratorKind::CutRank => {
            let mut adj = vec![vec![0u8; n]; n];
            for (u, v) in pairs {
                adj[u][v] = 1;
                adj[v][u] = 1;
            }
            ConnectivitySystem::cut_rank(GroundSet::new(names)?, &adj)?
        }
    };
    let edges = match config.edges {
        EdgeCount::Exact(m) => json!({ "exact": m }),
        EdgeCount::Density(p) => json!({ "density": p }),
    };
    Ok(Instance {
        name: format!("{}-s{}-{}", config.kind.as_str(), config.seed, index),
        system,
        source: Some(json!({
            "generator": config.kind.as_str(),
            "vertices": n,
            "edges": edges,
            "max_weight": config.max_weight,
            "seed": config.seed,
            "index": index,
        })),
    })
}

pub fn generate(config: &GeneratorConfig) -> Result<Vec<Instance>> {
    (0..config.count).map(|i| generate_one(config, i)).collect()
}
