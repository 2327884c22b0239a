//! Greedy search over every candidate root in the transformed graph.

use rayon::prelude::*;

use super::{rank_topk, AnswerTree, Query, SearchContext};
use crate::error::SearchError;
use crate::graph::NodeId;
use crate::hop2::TwoHopIndex;

/// A root with its nearest content node per keyword.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RootCandidate {
    pub root: NodeId,
    pub contents: Vec<NodeId>,
    pub score: f64,
}

impl SearchContext<'_> {
    /// Scores every node as a root by the summed distance to its nearest
    /// content node for each keyword, in the graph `index` covers. Roots
    /// that cannot reach some keyword within the index radius are skipped.
    pub(crate) fn root_candidates(
        &self,
        sets: &[Vec<NodeId>],
        index: &TwoHopIndex,
    ) -> Vec<RootCandidate> {
        (0..self.graph.node_count() as u32)
            .into_par_iter()
            .filter_map(|r| {
                let root = NodeId(r);
                let mut contents = Vec::with_capacity(sets.len());
                let mut score = 0.0;
                for set in sets {
                    let (c, d) = index.nearest(root, set)?;
                    contents.push(c);
                    score += d;
                }
                Some(RootCandidate { root, contents, score })
            })
            .collect()
    }

    /// Unique-root greedy ranking; the top `q.k` roots by summed distance are
    /// assembled into trees. `index` must cover `G'` for the query's method.
    pub fn greedy_unique_root(&self, q: &Query, index: &TwoHopIndex) -> Result<Vec<AnswerTree>, SearchError> {
        q.validate()?;
        self.check_index(index)?;
        let sets = self.content_sets(q)?;
        let ranked = rank_topk(self.root_candidates(&sets, index), q.k, |c| (c.score, c.root));
        ranked.into_iter().map(|c| self.answer(q, c.root, &c.contents, index, c.score)).collect()
    }
}
