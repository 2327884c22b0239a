//! Greedy search rooted at the content nodes of the rarest keyword, refined
//! by a replace loop over the importance graph `G''`.

use rayon::prelude::*;

use super::{rank_topk, AnswerTree, Query, SearchContext};
use crate::error::SearchError;
use crate::graph::NodeId;
use crate::hop2::TwoHopIndex;

/// Keyword with the fewest content nodes; ties go to fewer tokens, then to
/// the lexicographically smaller phrase.
pub(crate) fn pivot_keyword(q: &Query, sets: &[Vec<NodeId>]) -> usize {
    (0..sets.len())
        .min_by(|&a, &b| {
            sets[a]
                .len()
                .cmp(&sets[b].len())
                .then(q.keywords[a].tokens().len().cmp(&q.keywords[b].tokens().len()))
                .then(q.keywords[a].raw().cmp(q.keywords[b].raw()))
        })
        .expect("query has keywords")
}

/// One root's final tree and the `C(T)` of every accepted state, starting
/// with the initial assembly.
#[derive(Clone, Debug)]
pub struct ReplaceOutcome {
    pub tree: AnswerTree,
    pub accepted: Vec<f64>,
    pub rounds: usize,
}

impl SearchContext<'_> {
    pub(crate) fn replace_from_root(
        &self,
        q: &Query,
        sets: &[Vec<NodeId>],
        pivot: usize,
        root: NodeId,
        index: &TwoHopIndex,
    ) -> Result<Option<ReplaceOutcome>, SearchError> {
        // candidates per keyword, nearest first
        let mut ranked: Vec<Vec<(NodeId, f64)>> = Vec::with_capacity(sets.len());
        for (i, set) in sets.iter().enumerate() {
            if i == pivot {
                ranked.push(vec![(root, 0.0)]);
                continue;
            }
            let mut cands: Vec<(NodeId, f64)> =
                set.iter().filter_map(|&c| index.distance(root, c).map(|d| (c, d))).collect();
            if cands.is_empty() {
                return Ok(None);
            }
            cands.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            ranked.push(cands);
        }

        let mut chosen = vec![0usize; sets.len()];
        let contents_of = |chosen: &[usize]| -> Vec<NodeId> { chosen.iter().zip(&ranked).map(|(&k, r)| r[k].0).collect() };
        let distance_sum = |chosen: &[usize]| -> f64 { chosen.iter().zip(&ranked).fold(0.0, |acc, (&k, r)| acc + r[k].1) };

        let mut tree = self.answer(q, root, &contents_of(&chosen), index, distance_sum(&chosen))?;
        let mut accepted = vec![tree.scores.c];
        let mut cursor = vec![1usize; sets.len()];
        let mut rounds = 0;

        while rounds < q.max_iters {
            let mut tried = false;
            let mut best_gain = 0.0f64;
            for kw in (0..sets.len()).filter(|&i| i != pivot) {
                if cursor[kw] >= ranked[kw].len() {
                    continue;
                }
                tried = true;
                let mut trial = chosen.clone();
                trial[kw] = cursor[kw];
                cursor[kw] += 1;
                let candidate = self.answer(q, root, &contents_of(&trial), index, distance_sum(&trial))?;
                if candidate.scores.c < tree.scores.c {
                    best_gain = best_gain.max(tree.scores.c - candidate.scores.c);
                    chosen = trial;
                    tree = candidate;
                    accepted.push(tree.scores.c);
                }
            }
            if !tried {
                break;
            }
            rounds += 1;
            if best_gain <= q.delta {
                break;
            }
        }
        Ok(Some(ReplaceOutcome { tree, accepted, rounds }))
    }

    /// Roots one tree at each content node of the rarest keyword, improves
    /// each with the replace loop and returns the `q.k` best by `C(T)`.
    /// `index` must cover `G''`; the same index serves every λ.
    pub fn greedy_replace(&self, q: &Query, index: &TwoHopIndex) -> Result<Vec<AnswerTree>, SearchError> {
        let trees: Vec<AnswerTree> = self.replace_outcomes(q, index)?.into_iter().map(|o| o.tree).collect();
        Ok(rank_topk(trees, q.k, |t| (t.scores.c, t.root)))
    }

    /// Unranked per-root results of the replace loop, in root id order.
    pub fn replace_outcomes(&self, q: &Query, index: &TwoHopIndex) -> Result<Vec<ReplaceOutcome>, SearchError> {
        q.validate()?;
        self.check_index(index)?;
        let sets = self.content_sets(q)?;
        let pivot = pivot_keyword(q, &sets);
        let outcomes: Vec<Option<ReplaceOutcome>> = sets[pivot]
            .par_iter()
            .map(|&root| self.replace_from_root(q, &sets, pivot, root, index))
            .collect::<Result<_, _>>()?;
        Ok(outcomes.into_iter().flatten().collect())
    }
}
