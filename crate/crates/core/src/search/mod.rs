//! Answer-tree search and ranking.
//!
//! Three objectives score an answer tree `T`:
//! * `EW(T)`: sum of edge weights,
//! * `NI(T)`: sum of inverse importances over all tree nodes,
//! * `C(T) = λ·NI_norm + (1 − λ)·EW_norm` on normalized values.
//!
//! [`Method::Combined1`] (and its special cases [`Method::EdgeOnly`] and
//! [`Method::NodeImp`]) ranks every node as a candidate root by summed
//! nearest-content distance in the transformed graph `G'`. [`Method::Combined2`]
//! roots trees at the content nodes of the rarest keyword and improves them
//! with a replace loop over the λ-free graph `G''`. [`Method::Exact`] solves
//! the objective exactly on small instances.

mod exact;
mod rank;
mod replace;
mod tree;
mod unique_root;

use std::fmt;
use std::str::FromStr;

pub use exact::EXHAUSTIVE_LIMIT;
pub use rank::rank_topk;
pub use replace::ReplaceOutcome;
pub use tree::{assemble_tree, is_minimal_tree};

use crate::error::SearchError;
use crate::graph::{Edge, Graph, NodeId, NormalizationConstants};
use crate::hop2::TwoHopIndex;
use crate::text::{InvertedIndex, KeywordPhrase};

pub const DEFAULT_LAMBDA: f64 = 0.5;
pub const DEFAULT_K: usize = 5;
pub const DEFAULT_DELTA: f64 = 1e-3;
pub const DEFAULT_MAX_ITERS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    EdgeOnly,
    NodeImp,
    Combined1,
    Combined2,
    Exact,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::EdgeOnly, Method::NodeImp, Method::Combined1, Method::Combined2, Method::Exact];

    pub fn name(self) -> &'static str {
        match self {
            Method::EdgeOnly => "edge-only",
            Method::NodeImp => "node-imp",
            Method::Combined1 => "combined1",
            Method::Combined2 => "combined2",
            Method::Exact => "exact",
        }
    }

    /// Graph the method's distance index must be built over; `None` for
    /// [`Method::Exact`], which needs no index.
    pub fn index_graph(self, lambda: f64) -> Option<IndexGraph> {
        match self {
            Method::EdgeOnly => Some(IndexGraph::Base),
            Method::NodeImp | Method::Combined2 => Some(IndexGraph::Importance),
            Method::Combined1 => Some(IndexGraph::combined(lambda)),
            Method::Exact => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "edge-only" | "edge" | "edgeonly" => Method::EdgeOnly,
            "node-imp" | "nodeimp" => Method::NodeImp,
            "combined1" | "combined" => Method::Combined1,
            "combined2" => Method::Combined2,
            "exact" => Method::Exact,
            _ => return Err(SearchError::InvalidParameter(format!("unknown method {s:?}"))),
        })
    }
}

/// Which transform of the base graph a distance index covers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IndexGraph {
    /// The ingested graph, weights unchanged.
    Base,
    /// `G'` for a trade-off `λ < 1`.
    Combined(f64),
    /// `G''`, which is also `G'` at `λ = 1`.
    Importance,
}

impl IndexGraph {
    /// `G'` at `lambda`; `λ = 1` maps to [`IndexGraph::Importance`] since the
    /// two graphs are bit-identical.
    pub fn combined(lambda: f64) -> Self {
        if lambda == 1.0 {
            IndexGraph::Importance
        } else {
            IndexGraph::Combined(lambda)
        }
    }

    pub fn transform(self, g: &Graph) -> Graph {
        match self {
            IndexGraph::Base => g.clone(),
            IndexGraph::Combined(lambda) => g.transform_combined(lambda),
            IndexGraph::Importance => g.transform_node_importance(),
        }
    }
}

impl fmt::Display for IndexGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexGraph::Base => f.write_str("base"),
            IndexGraph::Combined(l) => write!(f, "combined(λ={l})"),
            IndexGraph::Importance => f.write_str("importance"),
        }
    }
}

/// What a ranking minimizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Objective {
    EdgeWeight,
    NodeImportance,
    Combined { lambda: f64 },
}

impl Objective {
    pub fn value(self, scores: &Scores, norm: &NormalizationConstants) -> f64 {
        match self {
            Objective::EdgeWeight => scores.ew,
            Objective::NodeImportance => scores.ni,
            Objective::Combined { lambda } => objective_combined(scores.ew, scores.ni, lambda, norm),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Query {
    pub keywords: Vec<KeywordPhrase>,
    pub method: Method,
    pub lambda: f64,
    pub k: usize,
    pub delta: f64,
    pub max_iters: usize,
}

impl Query {
    /// Query with default parameters. Repeated phrases (same token run) are
    /// kept once.
    pub fn new(keywords: Vec<KeywordPhrase>, method: Method) -> Self {
        let mut unique: Vec<KeywordPhrase> = Vec::with_capacity(keywords.len());
        for kw in keywords {
            if !unique.iter().any(|u| u.tokens() == kw.tokens()) {
                unique.push(kw);
            }
        }
        Query {
            keywords: unique,
            method,
            lambda: DEFAULT_LAMBDA,
            k: DEFAULT_K,
            delta: DEFAULT_DELTA,
            max_iters: DEFAULT_MAX_ITERS,
        }
    }

    pub fn parse(keywords: &[&str], method: Method) -> Result<Self, crate::error::TextError> {
        let phrases = keywords.iter().map(|k| KeywordPhrase::parse(k)).collect::<Result<Vec<_>, _>>()?;
        Ok(Query::new(phrases, method))
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::InvalidParameter(msg));
        if self.keywords.is_empty() {
            return Err(SearchError::EmptyQuery);
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return bad(format!("lambda must lie in [0, 1], got {}", self.lambda));
        }
        if self.k == 0 {
            return bad("k must be positive".into());
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return bad(format!("delta must be finite and non-negative, got {}", self.delta));
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive".into());
        }
        Ok(())
    }

    /// The objective this query's method optimizes.
    pub fn objective(&self) -> Objective {
        match self.method {
            Method::EdgeOnly => Objective::EdgeWeight,
            Method::NodeImp => Objective::NodeImportance,
            Method::Combined1 | Method::Combined2 | Method::Exact => Objective::Combined { lambda: self.lambda },
        }
    }

    pub fn index_graph(&self) -> Option<IndexGraph> {
        self.method.index_graph(self.lambda)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scores {
    /// Sum of base-graph edge weights.
    pub ew: f64,
    /// Sum of inverse importances over the tree's nodes.
    pub ni: f64,
    /// Combined objective on normalized `ew` and `ni`.
    pub c: f64,
    /// The value the producing algorithm ranked by: summed root-to-content
    /// distance in the index graph, or the objective itself for the exact
    /// search.
    pub search_score: f64,
}

/// A rooted answer. `nodes` is ascending; `edges` have `u < v`, are ascending
/// and carry base-graph weights.
#[derive(Clone, Debug, PartialEq)]
pub struct AnswerTree {
    pub root: NodeId,
    pub assignment: Vec<(KeywordPhrase, NodeId)>,
    pub nodes: Vec<NodeId>,
    pub edges: Vec<Edge>,
    pub scores: Scores,
}

impl AnswerTree {
    pub fn content_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.assignment.iter().map(|(_, c)| *c)
    }
}

pub fn objective_ew(edges: &[Edge]) -> f64 {
    edges.iter().fold(0.0, |acc, e| acc + e.weight)
}

pub fn objective_ni(nodes: &[NodeId], g: &Graph) -> f64 {
    nodes.iter().fold(0.0, |acc, &v| acc + g.node(v).inverse_importance())
}

pub fn objective_combined(ew: f64, ni: f64, lambda: f64, norm: &NormalizationConstants) -> f64 {
    lambda * (ni * norm.ni_scale) + (1.0 - lambda) * (ew * norm.ew_scale)
}

/// Read-only state shared by all searches over one graph.
#[derive(Clone, Copy, Debug)]
pub struct SearchContext<'a> {
    pub graph: &'a Graph,
    pub text: &'a InvertedIndex,
    pub norm: NormalizationConstants,
}

impl<'a> SearchContext<'a> {
    pub fn new(graph: &'a Graph, text: &'a InvertedIndex, norm: NormalizationConstants) -> Self {
        SearchContext { graph, text, norm }
    }

    /// Content nodes per keyword, in query order.
    pub fn content_sets(&self, q: &Query) -> Result<Vec<Vec<NodeId>>, SearchError> {
        q.keywords
            .iter()
            .map(|kw| {
                let set = self.text.content_nodes(self.graph, kw);
                if set.is_empty() {
                    Err(SearchError::NoMatch(kw.raw().to_owned()))
                } else {
                    Ok(set)
                }
            })
            .collect()
    }

    pub fn scores(&self, nodes: &[NodeId], edges: &[Edge], lambda: f64, search_score: f64) -> Scores {
        let ew = objective_ew(edges);
        let ni = objective_ni(nodes, self.graph);
        Scores { ew, ni, c: objective_combined(ew, ni, lambda, &self.norm), search_score }
    }

    fn check_index(&self, index: &TwoHopIndex) -> Result<(), SearchError> {
        if index.node_count() != self.graph.node_count() {
            return Err(SearchError::IndexMismatch { index: index.node_count(), graph: self.graph.node_count() });
        }
        Ok(())
    }

    /// Runs `q` with its method. `index` must cover the graph named by
    /// [`Query::index_graph`]; it is ignored for [`Method::Exact`].
    pub fn run(&self, q: &Query, index: Option<&TwoHopIndex>) -> Result<Vec<AnswerTree>, SearchError> {
        q.validate()?;
        let need_index = || {
            index.ok_or_else(|| SearchError::InvalidParameter(format!("method {} needs a distance index", q.method)))
        };
        match q.method {
            Method::EdgeOnly | Method::NodeImp | Method::Combined1 => self.greedy_unique_root(q, need_index()?),
            Method::Combined2 => self.greedy_replace(q, need_index()?),
            Method::Exact => Ok(vec![self.exact_exhaustive(q, q.objective())?]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_arithmetic() {
        let norm = NormalizationConstants::default();
        assert_eq!(objective_combined(2.0, 4.0, 0.5, &norm), 3.0);
        assert_eq!(objective_combined(2.0, 4.0, 0.0, &norm), 2.0);
        assert_eq!(objective_combined(2.0, 4.0, 1.0, &norm), 4.0);
        let norm = NormalizationConstants { ew_scale: 10.0, ni_scale: 0.5 };
        assert_eq!(objective_combined(0.2, 4.0, 0.0, &norm), 2.0);
        assert_eq!(objective_combined(0.2, 4.0, 1.0, &norm), 2.0);
    }

    #[test]
    fn ew_and_ni_sums() {
        let mut b = crate::graph::GraphBuilder::new();
        let a = b.add_node(1.0, "t", "").unwrap();
        let c = b.add_node(0.5, "t", "").unwrap();
        let g = b.build();
        let edges = [Edge { u: a, v: c, weight: 0.1 }, Edge { u: a, v: c, weight: 0.1 }];
        assert!((objective_ew(&edges) - 0.2).abs() < 1e-15);
        assert_eq!(objective_ew(&[]), 0.0);
        assert_eq!(objective_ni(&[a, c], &g), 3.0);
    }

    #[test]
    fn query_validation_and_dedup() {
        let q = Query::parse(&["Keanu Reeves", "keanu  REEVES", "matrix"], Method::Combined1).unwrap();
        assert_eq!(q.keywords.len(), 2);
        assert!(q.validate().is_ok());
        assert!(q.clone().with_lambda(1.5).validate().is_err());
        assert!(q.clone().with_k(0).validate().is_err());
        assert!(q.clone().with_delta(-1.0).validate().is_err());
        assert!(q.clone().with_max_iters(0).validate().is_err());
        assert!(Query::new(vec![], Method::Exact).validate().is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("bm25".parse::<Method>().is_err());
    }

    #[test]
    fn index_graph_selection() {
        assert_eq!(Method::Combined1.index_graph(1.0), Some(IndexGraph::Importance));
        assert_eq!(Method::Combined1.index_graph(0.0), Some(IndexGraph::Combined(0.0)));
        assert_eq!(Method::Combined2.index_graph(0.3), Some(IndexGraph::Importance));
        assert_eq!(Method::EdgeOnly.index_graph(0.3), Some(IndexGraph::Base));
        assert_eq!(Method::Exact.index_graph(0.3), None);
    }
}
