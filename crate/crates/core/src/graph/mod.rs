//! Node-labeled, undirected, weighted graph.
//!
//! Nodes carry an importance in `(0, 1]`, a short type tag and free text.
//! Edges carry a non-negative weight read as semantic distance. The graph is
//! immutable once built; the weighting schemes and the importance transforms
//! all produce new graphs with the same topology.

pub mod io;
mod transform;

use std::fmt;

use log::warn;

use crate::error::GraphError;

/// Dense node identifier, `0..node_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub importance: f64,
    pub node_type: String,
    pub text: String,
}

impl Node {
    /// `1 / importance`. Small for important nodes.
    #[inline]
    pub fn inverse_importance(&self) -> f64 {
        1.0 / self.importance
    }
}

/// An undirected edge as seen from the edge list (`u < v`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

/// How edge weights are assigned.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightScheme {
    /// Every edge gets the same weight.
    Equal(f64),
    /// `(log2(1 + deg u) + log2(1 + deg v)) / 2`.
    Logarithmic,
    /// Weights are taken from the input as-is.
    Semantic,
}

impl WeightScheme {
    pub fn validate(&self) -> Result<(), GraphError> {
        match *self {
            WeightScheme::Equal(w0) if !(w0 > 0.0 && w0.is_finite()) => {
                Err(GraphError::InvalidScheme(format!("equal weight must be positive, got {w0}")))
            }
            _ => Ok(()),
        }
    }

    /// Whether the edges file must carry a weight column.
    pub fn needs_input_weights(&self) -> bool {
        matches!(self, WeightScheme::Semantic)
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightScheme::Equal(w0) => write!(f, "equal:{w0}"),
            WeightScheme::Logarithmic => f.write_str("logarithmic"),
            WeightScheme::Semantic => f.write_str("semantic"),
        }
    }
}

impl std::str::FromStr for WeightScheme {
    type Err = GraphError;

    /// Accepts `equal`, `equal:<w0>`, `logarithmic` (or `log`) and `semantic`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let scheme = match s.split_once(':') {
            Some(("equal", w0)) => WeightScheme::Equal(
                w0.parse()
                    .map_err(|_| GraphError::InvalidScheme(format!("bad equal weight {w0:?}")))?,
            ),
            None if s == "equal" => WeightScheme::Equal(1.0),
            None if s == "logarithmic" || s == "log" => WeightScheme::Logarithmic,
            None if s == "semantic" => WeightScheme::Semantic,
            _ => return Err(GraphError::InvalidScheme(format!("unknown weight scheme {s:?}"))),
        };
        scheme.validate()?;
        Ok(scheme)
    }
}

/// Scale factors that put EW and NI on comparable, unitless scales.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizationConstants {
    pub ew_scale: f64,
    pub ni_scale: f64,
}

impl Default for NormalizationConstants {
    fn default() -> Self {
        NormalizationConstants { ew_scale: 1.0, ni_scale: 1.0 }
    }
}

impl NormalizationConstants {
    pub fn new(ew_scale: f64, ni_scale: f64) -> Result<Self, GraphError> {
        for (name, v) in [("ew_scale", ew_scale), ("ni_scale", ni_scale)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(GraphError::InvalidScheme(format!("{name} must be finite and positive, got {v}")));
            }
        }
        Ok(NormalizationConstants { ew_scale, ni_scale })
    }
}

/// Immutable graph in compressed adjacency form. Each undirected edge is
/// stored in both endpoint rows; rows are sorted by neighbor id.
#[derive(Clone, Debug)]
pub struct Graph {
    nodes: Vec<Node>,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    weights: Vec<f64>,
    scheme: WeightScheme,
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn scheme(&self) -> WeightScheme {
        self.scheme
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    #[inline]
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn node_ids(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.index() < self.nodes.len()
    }

    #[inline]
    pub fn degree(&self, id: NodeId) -> usize {
        self.offsets[id.index() + 1] - self.offsets[id.index()]
    }

    /// `(neighbor, weight)` pairs, ascending by neighbor.
    #[inline]
    pub fn neighbors(&self, id: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let range = self.offsets[id.index()]..self.offsets[id.index() + 1];
        self.targets[range.clone()].iter().copied().zip(self.weights[range].iter().copied())
    }

    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let range = self.offsets[u.index()]..self.offsets[u.index() + 1];
        let row = &self.targets[range.clone()];
        row.binary_search(&v).ok().map(|i| self.weights[range.start + i])
    }

    /// Every edge once, with `u < v`, in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.node_ids().flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, weight)| Edge { u, v, weight })
        })
    }

    pub fn mean_edge_weight(&self) -> Option<f64> {
        if self.edge_count() == 0 {
            return None;
        }
        let total: f64 = self.edges().map(|e| e.weight).sum();
        Some(total / self.edge_count() as f64)
    }

    /// `ew_scale = 1 / mean edge weight`, `ni_scale = 1 / mean inverse importance`.
    /// A graph without edges (or with all-zero weights) gets `ew_scale = 1`.
    pub fn normalization_constants(&self) -> NormalizationConstants {
        let ew_scale = match self.mean_edge_weight() {
            Some(mean) if mean > 0.0 => 1.0 / mean,
            _ => 1.0,
        };
        let ni_scale = if self.nodes.is_empty() {
            1.0
        } else {
            let total: f64 = self.nodes.iter().map(Node::inverse_importance).sum();
            self.nodes.len() as f64 / total
        };
        NormalizationConstants { ew_scale, ni_scale }
    }

    /// Reweights every edge; topology and node data are kept.
    pub fn apply_weight_scheme(&self, scheme: WeightScheme) -> Graph {
        assert!(scheme.validate().is_ok(), "invalid weight scheme {scheme:?}");
        let mut out = self.reweighted(|u, v, w| match scheme {
            WeightScheme::Equal(w0) => w0,
            WeightScheme::Logarithmic => {
                let du = (1 + self.degree(u)) as f64;
                let dv = (1 + self.degree(v)) as f64;
                (du.log2() + dv.log2()) / 2.0
            }
            WeightScheme::Semantic => w,
        });
        out.scheme = scheme;
        out
    }

    /// Copy of the graph with each edge weight replaced by `f(u, v, w)`.
    /// `f` must be symmetric in `u` and `v`.
    pub(crate) fn reweighted(&self, f: impl Fn(NodeId, NodeId, f64) -> f64) -> Graph {
        let mut weights = Vec::with_capacity(self.weights.len());
        for u in self.node_ids() {
            for (v, w) in self.neighbors(u) {
                // evaluate with the smaller endpoint first so both directions
                // get bit-identical values
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                weights.push(f(a, b, w));
            }
        }
        Graph {
            nodes: self.nodes.clone(),
            offsets: self.offsets.clone(),
            targets: self.targets.clone(),
            weights,
            scheme: self.scheme,
        }
    }
}

/// Collects nodes and edges and validates them into a [`Graph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    nodes: Vec<Node>,
    edges: Vec<(u32, u32, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(nodes: usize, edges: usize) -> Self {
        GraphBuilder { nodes: Vec::with_capacity(nodes), edges: Vec::with_capacity(edges) }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Appends a node; ids are assigned densely in insertion order.
    pub fn add_node(
        &mut self,
        importance: f64,
        node_type: impl Into<String>,
        text: impl Into<String>,
    ) -> Result<NodeId, GraphError> {
        let id = NodeId::new(self.nodes.len());
        if !(importance > 0.0 && importance <= 1.0) {
            return Err(GraphError::Importance { node: id, value: importance });
        }
        self.nodes.push(Node { id, importance, node_type: node_type.into(), text: text.into() });
        Ok(id)
    }

    /// Adds an undirected edge. Self-loops are dropped with a warning and
    /// reported as `Ok(false)`.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, weight: f64) -> Result<bool, GraphError> {
        let n = self.nodes.len();
        for end in [u, v] {
            if end.index() >= n {
                return Err(GraphError::DanglingEdge { node: end, node_count: n });
            }
        }
        if !(weight >= 0.0 && weight.is_finite()) {
            return Err(GraphError::EdgeWeight { u, v, value: weight });
        }
        if u == v {
            warn!("dropping self-loop on node {u}");
            return Ok(false);
        }
        let (a, b) = if u < v { (u.0, v.0) } else { (v.0, u.0) };
        self.edges.push((a, b, weight));
        Ok(true)
    }

    /// Builds with the weights as given (semantic scheme). Parallel edges
    /// collapse to their minimum weight.
    pub fn build(mut self) -> Graph {
        self.edges.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then(x.2.total_cmp(&y.2)));
        self.edges.dedup_by(|later, first| later.0 == first.0 && later.1 == first.1);

        let n = self.nodes.len();
        let mut degree = vec![0usize; n];
        for &(a, b, _) in &self.edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![NodeId(0); offsets[n]];
        let mut weights = vec![0.0; offsets[n]];
        // edges are sorted by (a, b): row u receives its smaller neighbors
        // (edges with b = u) before its larger ones (a = u), each ascending
        for &(a, b, w) in &self.edges {
            for (row, other) in [(b, a), (a, b)] {
                targets[cursor[row as usize]] = NodeId(other);
                weights[cursor[row as usize]] = w;
                cursor[row as usize] += 1;
            }
        }
        Graph { nodes: self.nodes, offsets, targets, weights, scheme: WeightScheme::Semantic }
    }

    /// Builds and then applies `scheme`.
    pub fn build_with_scheme(self, scheme: WeightScheme) -> Graph {
        let g = self.build();
        g.apply_weight_scheme(scheme)
    }
}
