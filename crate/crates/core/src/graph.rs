//! Problem graphs, node subsets and the combinatorial predicates used by both
//! problem families.
//!
//! Nodes are 1-indexed at the public surface. Internally node `i` maps to bit
//! `i - 1` of a subset's integer encoding, so the subset `{1, 3}` on four
//! nodes is the integer `0b0101` and renders as `"0101"` (node `n` leftmost).

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest node count accepted by exhaustive enumeration.
pub const MAX_ENUMERATION_NODES: usize = 24;

/// Undirected simple graph with positive node and edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    num_nodes: usize,
    /// Sorted, 1-indexed, `i < j`.
    edges: Vec<(usize, usize)>,
    edge_weights: Vec<f64>,
    node_weights: Vec<f64>,
}

impl Graph {
    /// Builds a unit-weight graph from 1-indexed edges.
    pub fn new(num_nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<_> = edges.iter().map(|&(i, j)| (i, j, 1.0)).collect();
        Self::with_edge_weights(num_nodes, &weighted)
    }

    /// Builds a graph from 1-indexed `(i, j, weight)` triples. Node weights
    /// default to 1.0.
    pub fn with_edge_weights(num_nodes: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if num_nodes == 0 {
            return Err(Error::InvalidGraph("graph must have at least one node".into()));
        }
        let mut seen = BTreeSet::new();
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b, w) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node {a}")));
            }
            for node in [a, b] {
                if node == 0 || node > num_nodes {
                    return Err(Error::InvalidGraph(format!(
                        "endpoint {node} outside 1..={num_nodes}"
                    )));
                }
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) has non-positive weight {w}")));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({},{})", key.0, key.1)));
            }
            list.push((key, w));
        }
        list.sort_by_key(|e| e.0);
        Ok(Self {
            num_nodes,
            edges: list.iter().map(|e| e.0).collect(),
            edge_weights: list.iter().map(|e| e.1).collect(),
            node_weights: vec![1.0; num_nodes],
        })
    }

    /// Replaces the node weights. `weights[i - 1]` is the weight of node `i`.
    pub fn with_node_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.num_nodes {
            return Err(Error::LengthMismatch { expected: self.num_nodes, got: weights.len() });
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidGraph(format!("non-positive node weight {w}")));
        }
        self.node_weights = weights;
        Ok(self)
    }

    /// Parses the edge-list text format: a header line `n m`, then `m` lines
    /// `i j [w]`. Blank lines and lines starting with `#` are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::Parse(format!("header must be `n m`, got `{header}`")));
        }
        let n = parse_usize(head[0])?;
        let m = parse_usize(head[1])?;
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let w = match fields.len() {
                2 => 1.0,
                3 => fields[2]
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad weight in `{line}`")))?,
                _ => return Err(Error::Parse(format!("edge line must be `i j [w]`, got `{line}`"))),
            };
            edges.push((parse_usize(fields[0])?, parse_usize(fields[1])?, w));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line `{extra}`")));
        }
        Self::with_edge_weights(n, &edges)
    }

    pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_edge_list(&std::fs::read_to_string(path)?)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// 1-indexed edges with `i < j`, in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges paired with their weights.
    pub fn weighted_edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.edges.iter().copied().zip(self.edge_weights.iter().copied())
    }

    pub fn node_weights(&self) -> &[f64] {
        &self.node_weights
    }

    /// Neighbors of a 1-indexed node, ascending.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(i, j)| match node {
                _ if node == i => Some(j),
                _ if node == j => Some(i),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn check_len(&self, s: &NodeSubset) -> Result<()> {
        if s.num_nodes() != self.num_nodes {
            return Err(Error::LengthMismatch { expected: self.num_nodes, got: s.num_nodes() });
        }
        Ok(())
    }

    /// First edge with both endpoints in `s`, if any.
    pub fn violated_edge(&self, s: &NodeSubset) -> Result<Option<(usize, usize)>> {
        self.check_len(s)?;
        Ok(self.edges.iter().copied().find(|&(i, j)| s.contains(i) && s.contains(j)))
    }

    /// True iff no edge has both endpoints in `s`.
    pub fn is_independent(&self, s: &NodeSubset) -> Result<bool> {
        Ok(self.violated_edge(s)?.is_none())
    }

    /// Total weight of edges crossing the partition `(s, V \ s)`.
    pub fn cut_value(&self, s: &NodeSubset) -> Result<f64> {
        self.check_len(s)?;
        Ok(self
            .weighted_edges()
            .filter(|&((i, j), _)| s.contains(i) != s.contains(j))
            .map(|(_, w)| w)
            .sum())
    }

    /// Sum of node weights over the members of `s`.
    pub fn subset_weight(&self, s: &NodeSubset) -> Result<f64> {
        self.check_len(s)?;
        Ok((1..=self.num_nodes)
            .filter(|&i| s.contains(i))
            .map(|i| self.node_weights[i - 1])
            .sum())
    }

    /// All independent sets in ascending order of their integer encoding.
    pub fn enumerate_feasible(&self) -> Result<Vec<NodeSubset>> {
        if self.num_nodes > MAX_ENUMERATION_NODES {
            return Err(Error::TooLarge {
                what: "node count for enumeration",
                n: self.num_nodes,
                max: MAX_ENUMERATION_NODES,
            });
        }
        let masks: Vec<u64> = self
            .edges
            .iter()
            .map(|&(i, j)| (1u64 << (i - 1)) | (1u64 << (j - 1)))
            .collect();
        Ok((0..1u64 << self.num_nodes)
            .filter(|x| masks.iter().all(|m| x & m != *m))
            .map(|x| NodeSubset { num_nodes: self.num_nodes, value: x })
            .collect())
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("expected a non-negative integer, got `{s}`")))
}

/// The three instances used throughout the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    /// 4-cycle 1-2-3-4-1.
    SquareRing,
    /// Complete bipartite, parts {1,2} and {3,4,5}.
    K23,
    /// Complete bipartite, parts {1,2,3} and {4,5,6}.
    K33,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 3] = [NamedGraph::SquareRing, NamedGraph::K23, NamedGraph::K33];

    pub fn as_str(self) -> &'static str {
        match self {
            NamedGraph::SquareRing => "square-ring",
            NamedGraph::K23 => "k23",
            NamedGraph::K33 => "k33",
        }
    }

    pub fn build(self) -> Graph {
        let edges = match self {
            NamedGraph::SquareRing => vec![(1, 2), (2, 3), (3, 4), (4, 1)],
            NamedGraph::K23 => complete_bipartite(&[1, 2], &[3, 4, 5]),
            NamedGraph::K33 => complete_bipartite(&[1, 2, 3], &[4, 5, 6]),
        };
        let n = edges.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(1);
        Graph::new(n, &edges).expect("named graphs are valid")
    }
}

fn complete_bipartite(left: &[usize], right: &[usize]) -> Vec<(usize, usize)> {
    left.iter().flat_map(|&i| right.iter().map(move |&j| (i, j))).collect()
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square-ring" => Ok(NamedGraph::SquareRing),
            "k23" => Ok(NamedGraph::K23),
            "k33" => Ok(NamedGraph::K33),
            other => Err(Error::UnknownGraph(other.to_string())),
        }
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Builds one of `square-ring`, `k23`, `k33`.
pub fn build_named_graph(name: &str) -> Result<Graph> {
    Ok(name.parse::<NamedGraph>()?.build())
}

/// A subset of graph nodes, equivalently a computational basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSubset {
    num_nodes: usize,
    value: u64,
}

impl NodeSubset {
    /// Subset from its integer encoding (bit `i - 1` set iff node `i` is a member).
    pub fn from_index(num_nodes: usize, value: u64) -> Self {
        debug_assert!(num_nodes >= 64 || value >> num_nodes == 0);
        Self { num_nodes, value }
    }

    pub fn empty(num_nodes: usize) -> Self {
        Self { num_nodes, value: 0 }
    }

    /// Subset containing the listed 1-indexed nodes.
    pub fn from_nodes(num_nodes: usize, nodes: &[usize]) -> Self {
        let value = nodes.iter().fold(0u64, |acc, &i| acc | (1 << (i - 1)));
        Self { num_nodes, value }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn index(&self) -> u64 {
        self.value
    }

    pub fn contains(&self, node: usize) -> bool {
        (self.value >> (node - 1)) & 1 == 1
    }

    /// Members as 1-indexed nodes, ascending.
    pub fn nodes(&self) -> Vec<usize> {
        (1..=self.num_nodes).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(&self) -> Self {
        let mask = if self.num_nodes >= 64 { u64::MAX } else { (1u64 << self.num_nodes) - 1 };
        Self { num_nodes: self.num_nodes, value: !self.value & mask }
    }
}

impl FromStr for NodeSubset {
    type Err = Error;

    /// Parses the canonical rendering: node `n` leftmost, node 1 rightmost.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > 64 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidBitstring(s.to_string()));
        }
        let value = u64::from_str_radix(s, 2).map_err(|_| Error::InvalidBitstring(s.into()))?;
        Ok(Self { num_nodes: s.len(), value })
    }
}

impl fmt::Display for NodeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.num_nodes)
    }
}
