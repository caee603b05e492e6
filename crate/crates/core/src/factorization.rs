//! 1-factorization of complete graphs and the induced edge partition of an
//! arbitrary graph into matchings.
//!
//! For even `n` the factors `S_0 .. S_{n-2}` are the round-robin rounds:
//! `S_i` holds the fixed edge `{n-1, i}` plus the rotating pairs
//! `{(i-j) mod (n-1), (i+j) mod (n-1)}` for `j = 1 .. n/2 - 1`. Two rotating
//! pairs from `S_i` and `S_h` can only coincide when `2i = 2h (mod n-1)`,
//! and since `n-1` is odd this forces `i = h`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// A set of node-disjoint edges, kept sorted by smaller endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneFactor {
    edges: Vec<Edge>,
}

impl OneFactor {
    /// Fails if two edges share a node.
    pub fn new(mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.lo()) || !seen.insert(e.hi()) {
                return Err(Error::invalid(format!("edge {e} shares a node with another edge")));
            }
        }
        Ok(OneFactor { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// True if the factor covers every node of `0..node_count`.
    pub fn is_perfect(&self, node_count: usize) -> bool {
        2 * self.edges.len() == node_count
            && self.edges.iter().all(|e| e.hi() < node_count)
    }
}

/// An ordered list of matchings that are pairwise edge-disjoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgePartition {
    classes: Vec<OneFactor>,
}

impl EdgePartition {
    pub fn classes(&self) -> &[OneFactor] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.classes.iter().map(OneFactor::len).sum()
    }

    /// Size of the largest class; this bounds the ancilla count of the
    /// layered edge detector.
    pub fn max_class_len(&self) -> usize {
        self.classes.iter().map(OneFactor::len).max().unwrap_or(0)
    }

    /// Checks disjointness, the matching property of each class and that the
    /// union equals the edge set of `g`.
    pub fn check_against(&self, g: &Graph) -> Result<()> {
        let mut union = BTreeSet::new();
        for (i, class) in self.classes.iter().enumerate() {
            let mut nodes = BTreeSet::new();
            for &e in class.edges() {
                if !nodes.insert(e.lo()) || !nodes.insert(e.hi()) {
                    return Err(Error::invalid(format!("class {i} is not a matching at {e}")));
                }
                if !union.insert(e) {
                    return Err(Error::invalid(format!("edge {e} appears in two classes")));
                }
            }
        }
        let expected: BTreeSet<Edge> = g.edges().collect();
        if union != expected {
            return Err(Error::invalid(format!(
                "partition covers {} edges, graph has {}",
                union.len(),
                expected.len()
            )));
        }
        Ok(())
    }
}

/// The `n - 1` perfect matchings of `K_n`.
pub fn one_factorization(n: usize) -> Result<EdgePartition> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "1-factorization needs a positive even node count, got {n}"
        )));
    }
    let m = n - 1;
    let classes = (0..m)
        .map(|i| {
            let mut edges = Vec::with_capacity(n / 2);
            edges.push(Edge::new(m, i));
            for j in 1..n / 2 {
                edges.push(Edge::new((i + m - j) % m, (i + j) % m));
            }
            edges.sort_unstable();
            OneFactor { edges }
        })
        .collect();
    Ok(EdgePartition { classes })
}

/// Restricts the factorization of `K_{n'}` (`n'` = node count rounded up to
/// even) to the edges of `g`, dropping classes that end up empty.
pub fn partition_edges(g: &Graph) -> EdgePartition {
    let n = g.node_count();
    let padded = n + n % 2;
    if padded == 0 {
        return EdgePartition::default();
    }
    let full = one_factorization(padded).expect("padded node count is even and positive");
    let classes = full
        .classes
        .into_iter()
        .map(|c| OneFactor {
            edges: c.edges.into_iter().filter(|e| g.has_edge(e.lo(), e.hi())).collect(),
        })
        .filter(|c| !c.is_empty())
        .collect();
    EdgePartition { classes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_sets(p: &EdgePartition) -> Vec<BTreeSet<(usize, usize)>> {
        p.classes()
            .iter()
            .map(|c| c.edges().iter().map(|e| (e.lo(), e.hi())).collect())
            .collect()
    }

    fn set(pairs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
    }

    #[test]
    fn k2_is_a_single_edge() {
        assert_eq!(as_sets(&one_factorization(2).unwrap()), vec![set(&[(0, 1)])]);
    }

    #[test]
    fn k4_matches_hand_evaluation() {
        // S_i = {3,i} + {(i-1) mod 3, (i+1) mod 3}
        let expected = vec![
            set(&[(3, 0), (1, 2)]),
            set(&[(3, 1), (0, 2)]),
            set(&[(3, 2), (0, 1)]),
        ];
        assert_eq!(as_sets(&one_factorization(4).unwrap()), expected);
    }

    #[test]
    fn k6_covers_each_edge_once() {
        let p = one_factorization(6).unwrap();
        assert_eq!(p.len(), 5);
        let mut seen = BTreeSet::new();
        for c in p.classes() {
            assert_eq!(c.len(), 3);
            assert!(c.is_perfect(6));
            for e in c.edges() {
                assert!(seen.insert(*e));
            }
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn rejects_odd_and_zero() {
        assert!(one_factorization(0).is_err());
        assert!(one_factorization(5).is_err());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_edges(&Graph::complete(4)).len(), 3);
        assert!(partition_edges(&Graph::new(7)).is_empty());
        assert!(partition_edges(&Graph::new(0)).is_empty());

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            as_sets(&partition_edges(&path)),
            vec![set(&[(1, 2)]), set(&[(0, 1)])]
        );
    }

    #[test]
    fn one_factor_rejects_shared_nodes() {
        assert!(OneFactor::new(vec![Edge::new(0, 1), Edge::new(1, 2)]).is_err());
        assert!(OneFactor::new(vec![Edge::new(0, 1), Edge::new(2, 3)]).is_ok());
    }
}
