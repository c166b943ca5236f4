//! JSON file formats.
//!
//! Instance files:
//!
//! ```json
//! {"type": "graph-cut", "vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}
//! {"type": "weighted-graph-cut", "vertices": [...], "edges": [...], "weights": [1, 3]}
//! {"type": "cut-rank", "adjacency": [[0, 1], [1, 0]]}
//! {"type": "table", "elements": ["a", "b"], "values": [{"set": [], "f": 0}, {"set": ["a"], "f": 1}]}
//! ```
//!
//! Graph-cut ground sets are the edges, labelled `u-v` unless a `labels`
//! array is given; cut-rank ground sets are the vertices, labelled by an
//! optional `labels` array (default `v0, v1, ...`). Every instance may also
//! carry a `name` and a free-form `source` object. Any other key is an
//! error. Objects are emitted with a fixed key order.

use std::fs;
use std::path::Path;

use connsys_core::decomposition::{DecompositionTree, RootedTree};
use connsys_core::duality::{InterpretationMatrix, TheoremVerdict};
use connsys_core::filter::{AxiomSet, FeMode, SearchConfig, SetFamily};
use connsys_core::{
    canonical_subsets, AxiomReport, ConnectivitySystem, ElementSet, FunctionSpec, GroundSet, Witness,
};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// A loaded connectivity system with its descriptor.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub system: ConnectivitySystem,
    /// Provenance carried through unchanged (generator config and seed).
    pub source: Option<Value>,
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    fs::write(path, to_pretty(value)).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(format!(
            "{what}: invalid JSON at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(format!("{ctx}: expected an object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::parse(format!("{ctx}: missing key `{key}`")))
}

fn array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(format!("{ctx}: expected an array")))
}

fn string(v: &Value, ctx: &str) -> Result<String> {
    v.as_str()
        .map(str::to_owned)
        .ok_or_else(|| Error::parse(format!("{ctx}: expected a string")))
}

fn natural(v: &Value, ctx: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .filter(|&x| x < u32::MAX)
        .ok_or_else(|| Error::parse(format!("{ctx}: expected a natural number")))
}

fn strings(v: &Value, ctx: &str) -> Result<Vec<String>> {
    array(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("{ctx}[{i}]")))
        .collect()
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], ctx: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::parse(format!("{ctx}: unknown key `{k}`"))),
        None => Ok(()),
    }
}

fn ground(labels: Vec<String>, ctx: &str) -> Result<GroundSet> {
    GroundSet::new(labels).map_err(|e| Error::parse(format!("{ctx}: {e}")))
}

fn vertex_pairs(v: &Value, vertices: &[String], ctx: &str) -> Result<Vec<(usize, usize)>> {
    array(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let ends = array(e, &format!("{ctx}[{i}]"))?;
            if ends.len() != 2 {
                return Err(Error::parse(format!("{ctx}[{i}]: an edge has two endpoints")));
            }
            let mut idx = [0; 2];
            for (j, end) in ends.iter().enumerate() {
                let at = format!("{ctx}[{i}][{j}]");
                let name = string(end, &at)?;
                idx[j] = vertices
                    .iter()
                    .position(|x| *x == name)
                    .ok_or_else(|| Error::parse(format!("{at}: unknown vertex `{name}`")))?;
            }
            Ok((idx[0], idx[1]))
        })
        .collect()
}

fn labelled_set(ground: &GroundSet, v: &Value, ctx: &str) -> Result<ElementSet> {
    let mut set = ElementSet::EMPTY;
    for (i, label) in array(v, ctx)?.iter().enumerate() {
        let at = format!("{ctx}[{i}]");
        let label = string(label, &at)?;
        let x = ground
            .index_of(&label)
            .ok_or_else(|| Error::parse(format!("{at}: unknown element `{label}`")))?;
        if set.contains(x) {
            return Err(Error::parse(format!("{at}: element `{label}` repeated")));
        }
        set = set.union(ElementSet::singleton(x));
    }
    Ok(set)
}

/// Parses an instance document. `default_name` is used when the document
/// has no `name`.
pub fn parse_instance(text: &str, default_name: &str) -> Result<Instance> {
    let doc = parse_json(text, "instance")?;
    let obj = as_object(&doc, "instance")?;
    let kind = string(field(obj, "type", "instance")?, "type")?;
    let name = match obj.get("name") {
        Some(v) => string(v, "name")?,
        None => default_name.to_owned(),
    };
    let source = obj.get("source").cloned();
    let wrap = |e: connsys_core::Error| match e {
        connsys_core::Error::Capacity { .. } => Error::Core(e),
        other => Error::parse(format!("instance: {other}")),
    };
    let system = match kind.as_str() {
        "graph-cut" => {
            reject_unknown(obj, &["type", "name", "source", "vertices", "edges", "labels"], "instance")?;
            let vertices = strings(field(obj, "vertices", "instance")?, "vertices")?;
            let edges = vertex_pairs(field(obj, "edges", "instance")?, &vertices, "edges")?;
            let labels = match obj.get("labels") {
                Some(v) => {
                    let l = strings(v, "labels")?;
                    if l.len() != edges.len() {
                        return Err(Error::parse(format!(
                            "labels: {} labels for {} edges",
                            l.len(),
                            edges.len()
                        )));
                    }
                    Some(l)
                }
                None => None,
            };
            ConnectivitySystem::graph_cut(vertices, edges, labels).map_err(wrap)?
        }
        "weighted-graph-cut" => {
            reject_unknown(obj, &["type", "name", "source", "vertices", "edges", "weights"], "instance")?;
            let vertices = strings(field(obj, "vertices", "instance")?, "vertices")?;
            let edges = vertex_pairs(field(obj, "edges", "instance")?, &vertices, "edges")?;
            let weights = array(field(obj, "weights", "instance")?, "weights")?;
            if weights.len() != edges.len() {
                return Err(Error::parse(format!(
                    "weights: {} weights for {} edges",
                    weights.len(),
                    edges.len()
                )));
            }
            let mut weighted = Vec::with_capacity(edges.len());
            for (i, (&(u, v), w)) in edges.iter().zip(weights).enumerate() {
                if u == v {
                    return Err(Error::parse(format!("edges[{i}]: self-loop")));
                }
                weighted.push((u, v, natural(w, &format!("weights[{i}]"))?));
            }
            ConnectivitySystem::weighted_graph_cut(ground(vertices, "vertices")?, weighted).map_err(wrap)?
        }
        "cut-rank" => {
            reject_unknown(obj, &["type", "name", "source", "adjacency", "labels"], "instance")?;
            let rows = array(field(obj, "adjacency", "instance")?, "adjacency")?;
            let mut matrix = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let entries = array(row, &format!("adjacency[{i}]"))?;
                let mut out = Vec::with_capacity(entries.len());
                for (j, x) in entries.iter().enumerate() {
                    match x.as_u64() {
                        Some(b @ (0 | 1)) => out.push(b as u8),
                        _ => return Err(Error::parse(format!("adjacency[{i}][{j}]: entry must be 0 or 1"))),
                    }
                }
                matrix.push(out);
            }
            let labels = match obj.get("labels") {
                Some(v) => strings(v, "labels")?,
                None => (0..matrix.len()).map(|i| format!("v{i}")).collect(),
            };
            ConnectivitySystem::cut_rank(ground(labels, "labels")?, &matrix).map_err(wrap)?
        }
        "table" => {
            reject_unknown(obj, &["type", "name", "source", "elements", "values"], "instance")?;
            let g = ground(strings(field(obj, "elements", "instance")?, "elements")?, "elements")?;
            let mut entries = Vec::new();
            for (i, entry) in array(field(obj, "values", "instance")?, "values")?.iter().enumerate() {
                let ctx = format!("values[{i}]");
                let e = as_object(entry, &ctx)?;
                reject_unknown(e, &["set", "f"], &ctx)?;
                let set = labelled_set(&g, field(e, "set", &ctx)?, &format!("{ctx}.set"))?;
                let f = natural(field(e, "f", &ctx)?, &format!("{ctx}.f"))?;
                entries.push((set, f));
            }
            ConnectivitySystem::table_from_entries(g, &entries).map_err(wrap)?
        }
        other => return Err(Error::parse(format!("type: unknown instance type `{other}`"))),
    };
    Ok(Instance { name, system, source })
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    parse_instance(&read_text(path)?, &stem)
}

/// The instance document for `inst`. Custom oracles are written out as
/// tables.
pub fn instance_json(inst: &Instance) -> Value {
    let sys = &inst.system;
    let g = sys.ground();
    let mut obj = Map::new();
    obj.insert("name".into(), json!(inst.name));
    match sys.spec() {
        FunctionSpec::GraphCut { vertices, edges } => {
            obj.insert("type".into(), json!("graph-cut"));
            obj.insert("vertices".into(), json!(vertices));
            let pairs: Vec<Value> = edges.iter().map(|&(u, v)| json!([vertices[u], vertices[v]])).collect();
            obj.insert("edges".into(), Value::Array(pairs));
            let default: Vec<String> = edges
                .iter()
                .map(|&(u, v)| format!("{}-{}", vertices[u], vertices[v]))
                .collect();
            if default != g.labels() {
                obj.insert("labels".into(), json!(g.labels()));
            }
        }
        FunctionSpec::WeightedGraphCut { edges } => {
            obj.insert("type".into(), json!("weighted-graph-cut"));
            obj.insert("vertices".into(), json!(g.labels()));
            let pairs: Vec<Value> = edges.iter().map(|&(u, v, _)| json!([g.label(u), g.label(v)])).collect();
            obj.insert("edges".into(), Value::Array(pairs));
            obj.insert("weights".into(), edges.iter().map(|e| e.2).collect());
        }
        FunctionSpec::CutRank { adjacency } => {
            obj.insert("type".into(), json!("cut-rank"));
            let n = g.len();
            let rows: Vec<Value> = adjacency
                .iter()
                .map(|row| (0..n).map(|j| row >> j & 1).collect())
                .collect();
            obj.insert("adjacency".into(), Value::Array(rows));
            obj.insert("labels".into(), json!(g.labels()));
        }
        FunctionSpec::Table { .. } | FunctionSpec::Custom(_) => {
            obj.insert("type".into(), json!("table"));
            obj.insert("elements".into(), json!(g.labels()));
            let values: Vec<Value> = canonical_subsets(g.len())
                .into_iter()
                .map(|a| json!({"set": set_json(g, a), "f": sys.value(a)}))
                .collect();
            obj.insert("values".into(), Value::Array(values));
        }
    }
    if let Some(src) = &inst.source {
        obj.insert("source".into(), src.clone());
    }
    Value::Object(obj)
}

pub fn set_json(ground: &GroundSet, set: ElementSet) -> Value {
    json!(ground.labels_of(set))
}

/// `{"members": [[labels], ...]}` in canonical member order.
pub fn family_json(ground: &GroundSet, family: &SetFamily) -> Value {
    json!({ "members": family_members_json(ground, family) })
}

fn family_members_json(ground: &GroundSet, family: &SetFamily) -> Value {
    family.members().iter().map(|&m| set_json(ground, m)).collect()
}

/// Parses `{"members": [[labels], ...]}` against `ground`.
pub fn parse_family(text: &str, ground: &GroundSet) -> Result<SetFamily> {
    let doc = parse_json(text, "family")?;
    let obj = as_object(&doc, "family")?;
    reject_unknown(obj, &["members"], "family")?;
    let mut members = Vec::new();
    for (i, m) in array(field(obj, "members", "family")?, "members")?.iter().enumerate() {
        let set = labelled_set(ground, m, &format!("members[{i}]"))?;
        if members.contains(&set) {
            return Err(Error::parse(format!("members[{i}]: duplicate member")));
        }
        members.push(set);
    }
    Ok(SetFamily::new(ground.len(), members)?)
}

pub fn witness_json(ground: &GroundSet, w: &Witness) -> Value {
    let sets: Vec<Value> = w.sets.iter().map(|&s| set_json(ground, s)).collect();
    json!({ "sets": sets, "values": w.values })
}

/// `[{"id": .., "pass": .., "witnesses": [..]}, ...]`
pub fn axioms_json(ground: &GroundSet, report: &AxiomReport) -> Value {
    report
        .entries
        .iter()
        .map(|e| {
            let ws: Vec<Value> = e.witnesses.iter().map(|w| witness_json(ground, w)).collect();
            json!({ "id": e.id.as_str(), "pass": e.pass, "witnesses": ws })
        })
        .collect()
}

pub fn config_json(config: &SearchConfig) -> Value {
    json!({
        "order_k": config.order_k,
        "fe_mode": config.fe_mode.as_str(),
        "require_fp": config.require_fp,
        "axiom_set": config.axiom_set.as_str(),
    })
}

pub fn parse_config(v: &Value) -> Result<SearchConfig> {
    let obj = as_object(v, "config")?;
    let fe = string(field(obj, "fe_mode", "config")?, "config.fe_mode")?;
    let set = string(field(obj, "axiom_set", "config")?, "config.axiom_set")?;
    Ok(SearchConfig {
        order_k: natural(field(obj, "order_k", "config")?, "config.order_k")?,
        fe_mode: FeMode::parse(&fe).ok_or_else(|| Error::parse(format!("config.fe_mode: unknown mode `{fe}`")))?,
        require_fp: field(obj, "require_fp", "config")?
            .as_bool()
            .ok_or_else(|| Error::parse("config.require_fp: expected a boolean"))?,
        axiom_set: AxiomSet::parse(&set)
            .ok_or_else(|| Error::parse(format!("config.axiom_set: unknown axiom set `{set}`")))?,
    })
}

/// Certificate for a found (or checked) family. With no family the
/// `family` is `null`, `axioms` empty and `overall` false.
pub fn certificate_json(
    ground: &GroundSet,
    config: &SearchConfig,
    family: Option<&SetFamily>,
    report: Option<&AxiomReport>,
) -> Value {
    json!({
        "order": config.order_k + 1,
        "config": config_json(config),
        "family": family.map(|f| family_members_json(ground, f)),
        "axioms": report.map(|r| axioms_json(ground, r)).unwrap_or_else(|| json!([])),
        "overall": report.is_some_and(|r| r.overall),
    })
}

fn node_json(ground: &GroundSet, t: &RootedTree) -> Value {
    match t {
        RootedTree::Leaf(x) => json!({ "leaf": ground.label(*x) }),
        RootedTree::Node(l, r) => json!({ "children": [node_json(ground, l), node_json(ground, r)] }),
    }
}

/// Sides of the edges of a rooted rendering, in pre-order: every node
/// except the root and the root's right child owns the edge above it (the
/// root's left child owns the edge the root subdivides).
fn rendered_sides(root: &RootedTree) -> Vec<ElementSet> {
    fn walk(t: &RootedTree, out: &mut Vec<ElementSet>) {
        out.push(t.elements());
        if let RootedTree::Node(l, r) = t {
            walk(l, out);
            walk(r, out);
        }
    }
    let mut out = Vec::new();
    if let RootedTree::Node(l, r) = root {
        walk(l, &mut out);
        if let RootedTree::Node(rl, rr) = r.as_ref() {
            walk(rl, &mut out);
            walk(rr, &mut out);
        }
    }
    out
}

fn rendered_widths(system: &ConnectivitySystem, root: Option<&RootedTree>) -> (u32, Value) {
    let g = system.ground();
    let sides = root.map(rendered_sides).unwrap_or_default();
    let width = sides
        .iter()
        .map(|&s| system.value(s))
        .max()
        .unwrap_or_else(|| system.value(system.full()));
    let edges: Vec<Value> = sides
        .iter()
        .map(|&s| json!({ "side": set_json(g, s), "width": system.value(s) }))
        .collect();
    (width, Value::Array(edges))
}

/// `{"tree": <node>, "width": n, "edge_widths": [{"side": [..], "width": n}, ...]}`
/// rooted at the midpoint of the tree's first edge.
pub fn decomposition_json(system: &ConnectivitySystem, tree: &DecompositionTree) -> Value {
    let root = tree.to_rooted();
    let (width, edges) = rendered_widths(system, root.as_ref());
    json!({
        "tree": root.as_ref().map(|r| node_json(system.ground(), r)),
        "width": width,
        "edge_widths": edges,
    })
}

fn parse_node(ground: &GroundSet, v: &Value, ctx: &str) -> Result<RootedTree> {
    let obj = as_object(v, ctx)?;
    if let Some(leaf) = obj.get("leaf") {
        reject_unknown(obj, &["leaf"], ctx)?;
        let label = string(leaf, &format!("{ctx}.leaf"))?;
        let x = ground
            .index_of(&label)
            .ok_or_else(|| Error::parse(format!("{ctx}.leaf: unknown element `{label}`")))?;
        return Ok(RootedTree::Leaf(x));
    }
    reject_unknown(obj, &["children"], ctx)?;
    let kids = array(field(obj, "children", ctx)?, &format!("{ctx}.children"))?;
    if kids.len() != 2 {
        return Err(Error::parse(format!("{ctx}.children: expected exactly two children")));
    }
    Ok(RootedTree::node(
        parse_node(ground, &kids[0], &format!("{ctx}.children[0]"))?,
        parse_node(ground, &kids[1], &format!("{ctx}.children[1]"))?,
    ))
}

/// Outcome of re-verifying a decomposition document.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionCheck {
    pub tree: DecompositionTree,
    pub width: u32,
    pub reported_width: Value,
    /// Reported width and every reported edge record agree exactly with
    /// the recomputation.
    pub matches: bool,
    pub recomputed: Value,
}

/// Parses a decomposition document, rebuilds the tree (validating its
/// shape and leaf bijection) and recomputes every reported width.
pub fn check_decomposition(text: &str, system: &ConnectivitySystem) -> Result<DecompositionCheck> {
    let doc = parse_json(text, "decomposition")?;
    let obj = as_object(&doc, "decomposition")?;
    reject_unknown(obj, &["tree", "width", "edge_widths"], "decomposition")?;
    let root = match field(obj, "tree", "decomposition")? {
        Value::Null => None,
        v => Some(parse_node(system.ground(), v, "tree")?),
    };
    let tree = match &root {
        Some(r) => DecompositionTree::from_rooted(system.len(), r)
            .map_err(|e| Error::parse(format!("tree: {e}")))?,
        None => DecompositionTree::degenerate(0).map_err(|e| Error::parse(format!("tree: {e}")))?,
    };
    if tree.ground_len() != system.len() {
        return Err(Error::parse("tree: leaves do not cover the ground set"));
    }
    let (width, edges) = rendered_widths(system, root.as_ref());
    let reported_width = field(obj, "width", "decomposition")?.clone();
    let reported_edges = field(obj, "edge_widths", "decomposition")?;
    let matches = reported_width == json!(width) && *reported_edges == edges;
    Ok(DecompositionCheck {
        tree,
        width,
        reported_width,
        matches,
        recomputed: json!({ "width": width, "edge_widths": edges }),
    })
}

/// Scalar fields of a verdict; the witness family and tree are stored
/// alongside in their own files.
pub fn verdict_json(v: &TheoremVerdict) -> Value {
    json!({
        "claim": v.claim.as_str(),
        "instance": v.instance,
        "k": v.k,
        "order": v.k + 1,
        "config": config_json(&v.config),
        "wuf_exists": v.wuf_exists(),
        "branchwidth": v.branchwidth,
        "hypothesis_met": v.hypothesis_met,
        "consistent": v.consistent,
        "violated_claim": v.violated_claim().map(|c| c.as_str()),
    })
}

pub fn matrix_json(m: &InterpretationMatrix, ground: &GroundSet) -> Value {
    let cells: Vec<Value> = m
        .cells
        .iter()
        .map(|c| {
            json!({
                "k": c.k,
                "fe_mode": c.fe_mode.as_str(),
                "require_fp": c.require_fp,
                "wuf_exists": c.theorem6.wuf_exists(),
                "family": c.theorem6.family.as_ref().map(|f| family_members_json(ground, f)),
                "theorem6": {"consistent": c.theorem6.consistent, "hypothesis_met": c.theorem6.hypothesis_met},
                "theorem7": {"consistent": c.theorem7.consistent, "hypothesis_met": c.theorem7.hypothesis_met},
            })
        })
        .collect();
    json!({
        "instance": m.instance,
        "branchwidth": m.branchwidth,
        "max_value": m.max_value,
        "cells": cells,
    })
}

/// Human-readable interpretation matrix.
pub fn matrix_text(m: &InterpretationMatrix) -> String {
    let mut out = format!(
        "instance {}: branch-width {}, max f {}\n",
        m.instance, m.branchwidth, m.max_value
    );
    out.push_str("   k  fe-mode        fp     wuf  thm6        thm7\n");
    for c in &m.cells {
        let mark = |v: &TheoremVerdict| {
            if !v.consistent {
                "VIOLATED"
            } else if v.hypothesis_met {
                "ok"
            } else {
                "vacuous"
            }
        };
        out.push_str(&format!(
            "{:>4}  {:<13}  {:<5}  {:<3}  {:<10}  {}\n",
            c.k,
            c.fe_mode.as_str(),
            c.require_fp,
            if c.theorem6.wuf_exists() { "yes" } else { "no" },
            mark(&c.theorem6),
            mark(&c.theorem7),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use connsys_core::decomposition::exact_branchwidth;

    const TRIANGLE: &str = r#"{"type": "graph-cut", "vertices": ["a", "b", "c"],
        "edges": [["a", "b"], ["b", "c"], ["c", "a"]]}"#;

    #[test]
    fn triangle_parses() {
        let inst = parse_instance(TRIANGLE, "tri").unwrap();
        assert_eq!(inst.name, "tri");
        assert_eq!(inst.system.ground().labels(), ["a-b", "b-c", "c-a"]);
        assert_eq!(inst.system.max_value().unwrap(), 2);
    }

    #[test]
    fn errors_name_key_and_index() {
        let bad = r#"{"type": "graph-cut", "vertices": ["a", "b"], "edges": [["a", "b"], ["a", "q"]]}"#;
        let msg = parse_instance(bad, "x").unwrap_err().to_string();
        assert!(msg.contains("edges[1][1]") && msg.contains("`q`"), "{msg}");
        let msg = parse_instance(r#"{"type": "table", "elements": ["a"], "values": [{"set": ["a"], "f": -1}]}"#, "x")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("values[0].f"), "{msg}");
        let msg = parse_instance(r#"{"type": "cut-rank", "adjacency": [[0, 1], [1, 0]], "extra": 1}"#, "x")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("`extra`"), "{msg}");
        let msg = parse_instance("{\"type\": ", "x").unwrap_err().to_string();
        assert!(msg.contains("line 1"), "{msg}");
        let msg = parse_instance(r#"{"type": "cut-rank", "adjacency": [[0, 1], [0, 0]]}"#, "x")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("adjacency[0][1]"), "{msg}");
    }

    #[test]
    fn every_kind_round_trips() {
        let docs = [
            TRIANGLE,
            r#"{"type": "weighted-graph-cut", "vertices": ["p", "q", "r"], "edges": [["p", "q"], ["q", "r"]], "weights": [2, 3]}"#,
            r#"{"type": "cut-rank", "adjacency": [[0, 1, 1], [1, 0, 0], [1, 0, 0]]}"#,
            r#"{"type": "table", "elements": ["a", "b"], "values": [{"set": [], "f": 0}, {"set": ["a"], "f": 1}]}"#,
        ];
        for doc in docs {
            let inst = parse_instance(doc, "x").unwrap();
            let again = parse_instance(&instance_json(&inst).to_string(), "y").unwrap();
            assert_eq!(again.name, "x");
            assert_eq!(again.system.values(), inst.system.values());
            assert_eq!(again.system.ground(), inst.system.ground());
        }
    }

    #[test]
    fn family_parsing() {
        let inst = parse_instance(TRIANGLE, "t").unwrap();
        let g = inst.system.ground();
        let f = parse_family(r#"{"members": [["a-b", "b-c", "c-a"], ["a-b"]]}"#, g).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(family_json(g, &f), json!({"members": [["a-b"], ["a-b", "b-c", "c-a"]]}));
        let msg = parse_family(r#"{"members": [["a-b"], ["a-b"]]}"#, g).unwrap_err().to_string();
        assert!(msg.contains("members[1]"));
        let msg = parse_family(r#"{"members": [["zz"]]}"#, g).unwrap_err().to_string();
        assert!(msg.contains("members[0][0]"));
    }

    #[test]
    fn decomposition_round_trip_and_tamper() {
        let inst = parse_instance(TRIANGLE, "t").unwrap();
        let (bw, tree) = exact_branchwidth(&inst.system).unwrap();
        let doc = decomposition_json(&inst.system, &tree);
        assert_eq!(doc["width"], json!(bw));
        assert_eq!(doc["edge_widths"].as_array().unwrap().len(), 3);
        let check = check_decomposition(&doc.to_string(), &inst.system).unwrap();
        assert!(check.matches);
        assert_eq!(check.width, bw);

        let mut tampered = doc.clone();
        tampered["width"] = json!(1);
        assert!(!check_decomposition(&tampered.to_string(), &inst.system).unwrap().matches);
        let mut tampered = doc;
        tampered["edge_widths"][0]["width"] = json!(7);
        assert!(!check_decomposition(&tampered.to_string(), &inst.system).unwrap().matches);
    }

    #[test]
    fn degenerate_decompositions() {
        for doc in [
            r#"{"type": "table", "elements": ["a"], "values": [{"set": [], "f": 4}]}"#,
            r#"{"type": "table", "elements": [], "values": [{"set": [], "f": 0}]}"#,
        ] {
            let inst = parse_instance(doc, "d").unwrap();
            let (_, tree) = exact_branchwidth(&inst.system).unwrap();
            let out = decomposition_json(&inst.system, &tree);
            assert!(check_decomposition(&out.to_string(), &inst.system).unwrap().matches);
        }
    }

    #[test]
    fn config_round_trip() {
        let c = SearchConfig::weak(3, FeMode::Unconditional, true);
        assert_eq!(parse_config(&config_json(&c)).unwrap(), c);
    }
}
