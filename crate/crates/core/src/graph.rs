//! Simple undirected graphs, clique enumeration, induced subgraphs and the
//! apex-node augmentation used by the Gamma search.

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An undirected edge, stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    /// Panics on a self-loop; use [`Graph::add_edge`] for checked insertion.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a}");
        Edge { lo: a.min(b), hi: a.max(b) }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn contains(&self, node: usize) -> bool {
        self.lo == node || self.hi == node
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A simple undirected graph on nodes `0..node_count`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new(node_count: usize) -> Self {
        Graph { node_count, edges: BTreeSet::new() }
    }

    /// Builds a graph from endpoint pairs. Duplicates (in either orientation)
    /// collapse; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(node_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(node_count);
        for (a, b) in pairs {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(node_count: usize) -> Self {
        let mut g = Graph::new(node_count);
        for a in 0..node_count {
            for b in a + 1..node_count {
                g.edges.insert(Edge::new(a, b));
            }
        }
        g
    }

    /// Inserts `{a, b}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        if a == b {
            return Err(Error::invalid(format!("self-loop on node {a}")));
        }
        if a >= self.node_count || b >= self.node_count {
            return Err(Error::invalid(format!(
                "edge {a}-{b} out of range for {} nodes",
                self.node_count
            )));
        }
        Ok(self.edges.insert(Edge::new(a, b)))
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        a != b && self.edges.remove(&Edge::new(a, b))
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(lo, hi)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&Edge::new(a, b))
    }

    /// Edge density `m / C(n, 2)`; zero for graphs with fewer than two nodes.
    pub fn density(&self) -> f64 {
        let pairs = self.node_count * self.node_count.saturating_sub(1) / 2;
        if pairs == 0 {
            0.0
        } else {
            self.edge_count() as f64 / pairs as f64
        }
    }

    /// True if every pair of `nodes` is adjacent.
    pub fn is_clique(&self, nodes: &[usize]) -> bool {
        nodes
            .iter()
            .enumerate()
            .all(|(i, &a)| nodes[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// The subgraph induced by `nodes`, relabelled `0..nodes.len()` in the
    /// order given.
    pub fn induced(&self, nodes: &[usize]) -> Result<Graph> {
        if let Some(&bad) = nodes.iter().find(|&&v| v >= self.node_count) {
            return Err(Error::invalid(format!(
                "node {bad} out of range for {} nodes",
                self.node_count
            )));
        }
        let mut g = Graph::new(nodes.len());
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &b) in nodes.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.edges.insert(Edge::new(i, j));
                }
            }
        }
        Ok(g)
    }

    /// All `k`-cliques, each as an ascending node list, in lexicographic order.
    pub fn k_cliques(&self, k: usize) -> Result<Vec<Vec<usize>>> {
        if k == 0 || k > self.node_count {
            return Err(Error::invalid(format!(
                "clique size {k} outside 1..={}",
                self.node_count
            )));
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        let all: Vec<usize> = (0..self.node_count).collect();
        self.extend_cliques(k, &all, &mut current, &mut out);
        Ok(out)
    }

    fn extend_cliques(
        &self,
        k: usize,
        candidates: &[usize],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for (i, &v) in candidates.iter().enumerate() {
            if candidates.len() - i < needed {
                break;
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.has_edge(v, w))
                .collect();
            current.push(v);
            self.extend_cliques(k, &next, current, out);
            current.pop();
        }
    }

    pub fn count_k_cliques(&self, k: usize) -> Result<usize> {
        self.k_cliques(k).map(|c| c.len())
    }
}

/// Convenience wrapper matching the classical ground-truth step of the
/// benchmark.
pub fn list_k_cliques(g: &Graph, k: usize) -> Result<Vec<Vec<usize>>> {
    g.k_cliques(k)
}

/// An induced subgraph together with the source node id of each new label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub node_map: Vec<usize>,
}

/// Picks `n` distinct nodes uniformly at random and returns the induced
/// subgraph with an order-preserving relabelling.
pub fn random_induced_subgraph(g: &Graph, n: usize, seed: u64) -> Result<InducedSubgraph> {
    if n > g.node_count() {
        return Err(Error::invalid(format!(
            "cannot draw {n} nodes from a {}-node graph",
            g.node_count()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = rand::seq::index::sample(&mut rng, g.node_count(), n).into_vec();
    nodes.sort_unstable();
    let graph = g.induced(&nodes)?;
    Ok(InducedSubgraph { graph, node_map: nodes })
}

/// Number of apex nodes that brings a `k`-node query to a size congruent to
/// 3 mod 4, never zero.
pub fn apex_count(k: usize) -> usize {
    match (7 - k % 4) % 4 {
        0 => 4,
        q => q,
    }
}

/// A graph extended with apex nodes adjacent to every other node. Apex nodes
/// take the highest indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGraph {
    pub graph: Graph,
    pub apex_count: usize,
    pub original_n: usize,
    pub k: usize,
}

impl AugmentedGraph {
    /// `n + q`, the width of the `idx` and `inp` registers.
    pub fn n_qubits(&self) -> usize {
        self.original_n + self.apex_count
    }

    pub fn apex_nodes(&self) -> std::ops::Range<usize> {
        self.original_n..self.n_qubits()
    }

    /// Size of every query handed to Gamma, `k + q`.
    pub fn query_size(&self) -> usize {
        self.k + self.apex_count
    }

    /// Characteristic bit mask of `nodes` (original labels) together with
    /// every apex node.
    pub fn query_mask(&self, nodes: &[usize]) -> u64 {
        let apex: u64 = self.apex_nodes().fold(0, |m, v| m | 1 << v);
        nodes.iter().fold(apex, |m, &v| m | 1 << v)
    }

    /// Inverse of [`query_mask`](Self::query_mask): the original nodes of an
    /// `idx` outcome, or `None` if any apex bit is clear.
    pub fn decode_query(&self, mask: u64) -> Option<Vec<usize>> {
        if self.apex_nodes().any(|v| mask >> v & 1 == 0) {
            return None;
        }
        Some((0..self.original_n).filter(|&v| mask >> v & 1 == 1).collect())
    }
}

pub fn augment_apex(g: &Graph, k: usize) -> Result<AugmentedGraph> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("clique size {k} outside 1..={n}")));
    }
    let q = apex_count(k);
    let mut graph = Graph::new(n + q);
    for e in g.edges() {
        graph.edges.insert(e);
    }
    for apex in n..n + q {
        for v in 0..n + q {
            if v != apex {
                graph.edges.insert(Edge::new(v, apex));
            }
        }
    }
    Ok(AugmentedGraph { graph, apex_count: q, original_n: n, k })
}
