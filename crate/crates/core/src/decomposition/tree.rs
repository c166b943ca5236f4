use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::set::ElementSet;
use crate::system::ConnectivitySystem;
use crate::Result;

/// A branch decomposition tree: an unrooted tree whose internal nodes have
/// degree three, with a bijection from its leaves to the ground set.
///
/// Nodes are `0..node_count()`. Edges are stored as `(u, v)` with `u < v`
/// and are identified by their index in [`edges`](Self::edges).
///
/// Ground sets of size 0, 1 and 2 get the degenerate trees: no nodes, a
/// single leaf, and two leaves joined by one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    ground_len: usize,
    edges: Vec<(usize, usize)>,
    /// Element carried by each node, `None` for internal nodes.
    leaf_of: Vec<Option<usize>>,
}

/// Width of one tree edge: `f` of the elements on one side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCutRecord {
    pub edge: usize,
    pub side: ElementSet,
    pub width: u32,
}

/// Widths of all edges of a tree; `width` is their maximum, or `f(X)` for a
/// tree without edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    pub records: Vec<EdgeCutRecord>,
    pub width: u32,
}

/// A tree rooted at the midpoint of an edge (or at the single leaf of a
/// one-element ground set). Leaves carry element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootedTree {
    Leaf(usize),
    Node(Box<RootedTree>, Box<RootedTree>),
}

impl RootedTree {
    pub fn node(left: RootedTree, right: RootedTree) -> Self {
        RootedTree::Node(Box::new(left), Box::new(right))
    }

    /// Elements under this node.
    pub fn elements(&self) -> ElementSet {
        match self {
            RootedTree::Leaf(x) => ElementSet::singleton(*x),
            RootedTree::Node(l, r) => l.elements().union(r.elements()),
        }
    }
}

impl DecompositionTree {
    /// Builds and validates a tree. `leaf_map` pairs leaf nodes with
    /// element indices.
    pub fn new(
        ground_len: usize,
        node_count: usize,
        edges: Vec<(usize, usize)>,
        leaf_map: &[(usize, usize)],
    ) -> Result<Self> {
        let mut leaf_of = vec![None; node_count];
        let mut seen = ElementSet::EMPTY;
        for &(node, x) in leaf_map {
            if node >= node_count || x >= ground_len {
                return Err(invalid("leaf map refers to a missing node or element"));
            }
            if leaf_of[node].is_some() || seen.contains(x) {
                return Err(invalid("leaf map is not a bijection"));
            }
            leaf_of[node] = Some(x);
            seen = seen.union(ElementSet::singleton(x));
        }
        let edges = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        let tree = DecompositionTree {
            ground_len,
            edges,
            leaf_of,
        };
        tree.validate()?;
        Ok(tree)
    }

    /// Unroots a [`RootedTree`]: the root's two children are joined by an
    /// edge. Nodes are numbered in pre-order.
    pub fn from_rooted(ground_len: usize, root: &RootedTree) -> Result<Self> {
        let mut edges = Vec::new();
        let mut leaves = Vec::new();
        let mut count = 0;
        match root {
            RootedTree::Leaf(x) => {
                leaves.push((0, *x));
                count = 1;
            }
            RootedTree::Node(l, r) => {
                let a = build(l, &mut count, &mut edges, &mut leaves);
                let b = build(r, &mut count, &mut edges, &mut leaves);
                edges.push((a, b));
            }
        }
        DecompositionTree::new(ground_len, count, edges, &leaves)
    }

    /// The tree for a ground set with fewer than three elements.
    pub fn degenerate(ground_len: usize) -> Result<Self> {
        match ground_len {
            0 => DecompositionTree::new(0, 0, Vec::new(), &[]),
            1 => DecompositionTree::new(1, 1, Vec::new(), &[(0, 0)]),
            2 => DecompositionTree::new(2, 2, vec![(0, 1)], &[(0, 0), (1, 1)]),
            _ => Err(invalid("degenerate trees exist only for fewer than three elements")),
        }
    }

    pub fn ground_len(&self) -> usize {
        self.ground_len
    }

    pub fn node_count(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Element mapped to `node`, if it is a leaf.
    pub fn leaf_element(&self, node: usize) -> Option<usize> {
        self.leaf_of.get(node).copied().flatten()
    }

    /// Leaf nodes in node order.
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&v| self.leaf_of[v].is_some())
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    fn validate(&self) -> Result<()> {
        let n = self.ground_len;
        let nodes = self.node_count();
        let leaf_count = self.leaf_of.iter().filter(|l| l.is_some()).count();
        if leaf_count != n {
            return Err(invalid(&format!("{leaf_count} leaves for {n} elements")));
        }
        if n == 0 {
            return if nodes == 0 { Ok(()) } else { Err(invalid("empty ground set needs an empty tree")) };
        }
        if self.edges.len() + 1 != nodes {
            return Err(invalid("a tree on m nodes has m - 1 edges"));
        }
        let adj = self.adjacency();
        for &(u, v) in &self.edges {
            if u == v || u >= nodes || v >= nodes {
                return Err(invalid("edge endpoint out of range or self-loop"));
            }
        }
        // connected + |E| = |V| - 1 => acyclic
        let mut seen = vec![false; nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(invalid("tree is not connected"));
        }
        if n >= 2 {
            for (v, list) in adj.iter().enumerate() {
                let want = if self.leaf_of[v].is_some() { 1 } else { 3 };
                if list.len() != want {
                    return Err(invalid(&format!(
                        "node {v} has degree {}, expected {want}",
                        list.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Elements mapped from the leaves in the component of `T - e` that
    /// contains the smaller endpoint of edge `e`.
    pub fn edge_side_set(&self, e: usize) -> Result<ElementSet> {
        let &(u, v) = self.edges.get(e).ok_or(Error::UnknownEdge(e))?;
        Ok(self.side_from(u, v, &self.adjacency()))
    }

    fn side_from(&self, start: usize, blocked: usize, adj: &[Vec<usize>]) -> ElementSet {
        let mut side = ElementSet::EMPTY;
        let mut stack = vec![(start, blocked)];
        while let Some((node, parent)) = stack.pop() {
            if let Some(x) = self.leaf_of[node] {
                side = side.union(ElementSet::singleton(x));
            }
            stack.extend(adj[node].iter().filter(|&&w| w != parent).map(|&w| (w, node)));
        }
        side
    }

    /// One side set per edge, in edge order.
    pub fn side_sets(&self) -> Vec<ElementSet> {
        let adj = self.adjacency();
        self.edges.iter().map(|&(u, v)| self.side_from(u, v, &adj)).collect()
    }

    /// Each edge's bipartition, normalized to the side avoiding element 0,
    /// sorted. Two leaf-labelled trees are isomorphic exactly when these
    /// agree.
    pub fn splits(&self) -> Vec<ElementSet> {
        let mut splits: Vec<ElementSet> = self
            .side_sets()
            .into_iter()
            .map(|s| if s.contains(0) { s.complement_in(self.ground_len) } else { s })
            .collect();
        splits.sort_unstable();
        splits
    }

    fn check_ground(&self, system: &ConnectivitySystem) -> Result<()> {
        if self.ground_len == system.len() {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    /// `f` of the side set of edge `e`.
    pub fn width_of_edge(&self, system: &ConnectivitySystem, e: usize) -> Result<u32> {
        self.check_ground(system)?;
        Ok(system.value(self.edge_side_set(e)?))
    }

    pub fn width_of_tree(&self, system: &ConnectivitySystem) -> Result<WidthReport> {
        self.check_ground(system)?;
        let records: Vec<EdgeCutRecord> = self
            .side_sets()
            .into_iter()
            .enumerate()
            .map(|(edge, side)| EdgeCutRecord {
                edge,
                side,
                width: system.value(side),
            })
            .collect();
        let width = records
            .iter()
            .map(|r| r.width)
            .max()
            .unwrap_or_else(|| system.value(system.full()));
        Ok(WidthReport { records, width })
    }

    /// Roots the tree at the midpoint of edge 0, visiting neighbours in
    /// increasing node order. `None` for the empty tree.
    pub fn to_rooted(&self) -> Option<RootedTree> {
        let adj = self.adjacency();
        match self.edges.first() {
            None => self.leaf_of.first().map(|x| RootedTree::Leaf(x.expect("lone node is a leaf"))),
            Some(&(u, v)) => Some(RootedTree::node(
                self.rooted_from(u, v, &adj),
                self.rooted_from(v, u, &adj),
            )),
        }
    }

    fn rooted_from(&self, node: usize, parent: usize, adj: &[Vec<usize>]) -> RootedTree {
        if let Some(x) = self.leaf_of[node] {
            return RootedTree::Leaf(x);
        }
        let mut kids = adj[node].iter().filter(|&&w| w != parent);
        let (a, b) = (*kids.next().unwrap(), *kids.next().unwrap());
        RootedTree::node(self.rooted_from(a, node, adj), self.rooted_from(b, node, adj))
    }
}

fn build(
    t: &RootedTree,
    count: &mut usize,
    edges: &mut Vec<(usize, usize)>,
    leaves: &mut Vec<(usize, usize)>,
) -> usize {
    let id = *count;
    *count += 1;
    match t {
        RootedTree::Leaf(x) => leaves.push((id, *x)),
        RootedTree::Node(l, r) => {
            let a = build(l, count, edges, leaves);
            let b = build(r, count, edges, leaves);
            edges.push((id, a));
            edges.push((id, b));
        }
    }
    id
}

fn invalid(msg: &str) -> Error {
    Error::Invalid(format!("invalid decomposition tree: {msg}"))
}
