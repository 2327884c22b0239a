//! Keyword search over node-labeled weighted graphs.
//!
//! Answers are trees whose leaves hold the query keywords. They can be
//! ranked by total edge weight, by the summed inverse importance of their
//! nodes, or by a λ-weighted blend of the two. Distances and shortest paths
//! come from a distance-bounded 2-hop cover index.

pub mod error;
pub mod graph;
pub mod hop2;
pub mod search;
pub mod synth;
pub mod text;

pub use error::{GraphError, IndexError, SearchError, TextError};
pub use graph::{Edge, Graph, GraphBuilder, Node, NodeId, NormalizationConstants, WeightScheme};
pub use hop2::{IndexStats, LabelEntry, TwoHopIndex};
pub use search::{AnswerTree, Method, Objective, Query, Scores, SearchContext};
pub use text::{tokenize, InvertedIndex, KeywordPhrase, Token};
