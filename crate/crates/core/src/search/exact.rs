//! Exact minimization of EW, NI or C over all covering trees.
//!
//! The objective of a tree is `α·Σ w(e) + β·Σ imp'(n)`, i.e. a node- and
//! edge-weighted group Steiner tree with one group per keyword. A
//! Dreyfus–Wagner style dynamic program over keyword subsets solves it:
//! `best[S][v]` is the cheapest tree containing `v` that covers the keywords
//! in `S`, built by merging two subtrees at `v` or by growing along an edge.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use super::{AnswerTree, Objective, Query, SearchContext};
use crate::error::SearchError;
use crate::graph::{Edge, NodeId};

/// Refusal bound on `|roots| × Π |content set|`.
pub const EXHAUSTIVE_LIMIT: f64 = 1e7;

/// Subset masks are `u32`; more keywords than this would not fit in memory anyway.
const MAX_KEYWORDS: usize = 16;

#[derive(Clone, Copy, Debug)]
enum Step {
    Unset,
    Leaf,
    Grow(NodeId),
    Merge(u32),
}

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, NodeId);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl SearchContext<'_> {
    /// Edge and node cost multipliers for `objective`.
    fn cost_weights(&self, objective: Objective) -> (f64, f64) {
        match objective {
            Objective::EdgeWeight => (1.0, 0.0),
            Objective::NodeImportance => (0.0, 1.0),
            Objective::Combined { lambda } => ((1.0 - lambda) * self.norm.ew_scale, lambda * self.norm.ni_scale),
        }
    }

    /// Minimum-`objective` tree covering every keyword. Refuses instances
    /// where `|nodes| × Π |content set|` exceeds [`EXHAUSTIVE_LIMIT`].
    pub fn exact_exhaustive(&self, q: &Query, objective: Objective) -> Result<AnswerTree, SearchError> {
        if q.keywords.is_empty() {
            return Err(SearchError::EmptyQuery);
        }
        let sets = self.content_sets(q)?;
        let combinations = sets.iter().fold(self.graph.node_count() as f64, |acc, s| acc * s.len() as f64);
        if combinations > EXHAUSTIVE_LIMIT || sets.len() > MAX_KEYWORDS {
            return Err(SearchError::TooLarge { combinations, limit: EXHAUSTIVE_LIMIT });
        }

        let g = self.graph;
        let n = g.node_count();
        let (alpha, beta) = self.cost_weights(objective);
        let node_cost: Vec<f64> = g.nodes().iter().map(|v| beta * v.inverse_importance()).collect();
        let full = (1u32 << sets.len()) - 1;

        let mut best = vec![vec![f64::INFINITY; n]; full as usize + 1];
        let mut step = vec![vec![Step::Unset; n]; full as usize + 1];
        for (i, set) in sets.iter().enumerate() {
            for &v in set {
                best[1 << i][v.index()] = node_cost[v.index()];
                step[1 << i][v.index()] = Step::Leaf;
            }
        }

        let mut heap = BinaryHeap::new();
        for mask in 1..=full {
            // merges: split mask into two non-empty halves, each pair once
            let mut sub = (mask - 1) & mask;
            while sub > 0 {
                let other = mask ^ sub;
                if sub < other {
                    for v in 0..n {
                        let cost = best[sub as usize][v] + best[other as usize][v] - node_cost[v];
                        if cost < best[mask as usize][v] {
                            best[mask as usize][v] = cost;
                            step[mask as usize][v] = Step::Merge(sub);
                        }
                    }
                }
                sub = (sub - 1) & mask;
            }

            // grow along edges
            let row = &mut best[mask as usize];
            let steps = &mut step[mask as usize];
            heap.clear();
            heap.extend((0..n).filter(|&v| row[v].is_finite()).map(|v| Entry(row[v], NodeId::new(v))));
            while let Some(Entry(cost, v)) = heap.pop() {
                if cost > row[v.index()] {
                    continue;
                }
                for (u, w) in g.neighbors(v) {
                    let next = cost + alpha * w + node_cost[u.index()];
                    if next < row[u.index()] {
                        row[u.index()] = next;
                        steps[u.index()] = Step::Grow(v);
                        heap.push(Entry(next, u));
                    }
                }
            }
        }

        let full_row = &best[full as usize];
        let root = (0..n)
            .filter(|&v| full_row[v].is_finite())
            .min_by(|&a, &b| full_row[a].total_cmp(&full_row[b]).then(a.cmp(&b)))
            .map(NodeId::new)
            .ok_or_else(|| SearchError::Disconnected(sets[0][0], sets[sets.len() - 1][0]))?;

        // unwind the DP into a connected subgraph
        let mut nodes = BTreeSet::new();
        let mut edges = BTreeSet::new();
        let mut stack = vec![(full, root)];
        while let Some((mask, v)) = stack.pop() {
            nodes.insert(v);
            match step[mask as usize][v.index()] {
                Step::Leaf => {}
                Step::Grow(u) => {
                    edges.insert((u.min(v), u.max(v)));
                    stack.push((mask, u));
                }
                Step::Merge(sub) => {
                    stack.push((sub, v));
                    stack.push((mask ^ sub, v));
                }
                Step::Unset => unreachable!("finite DP cell without a step"),
            }
        }

        let contents: Vec<NodeId> = sets
            .iter()
            .map(|set| *set.iter().find(|c| nodes.contains(c)).expect("optimal tree covers every keyword"))
            .collect();
        let (nodes, edges) = spanning_tree(root, &nodes, &edges, &contents);
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v)| Edge { u, v, weight: g.edge_weight(u, v).expect("tree edges exist") })
            .collect();

        let mut scores = self.scores(&nodes, &edges, q.lambda, 0.0);
        scores.search_score = objective.value(&scores, &self.norm);
        Ok(AnswerTree {
            root,
            assignment: q.keywords.iter().cloned().zip(contents).collect(),
            nodes,
            edges,
            scores,
        })
    }
}

/// BFS spanning tree of the unwound subgraph, then pruning of leaves that
/// are neither the root nor a content node. Overlapping subtrees in the DP
/// can close cycles; dropping an edge never increases the cost.
fn spanning_tree(
    root: NodeId,
    nodes: &BTreeSet<NodeId>,
    edges: &BTreeSet<(NodeId, NodeId)>,
    contents: &[NodeId],
) -> (Vec<NodeId>, Vec<(NodeId, NodeId)>) {
    let mut adj: BTreeMap<NodeId, Vec<NodeId>> = nodes.iter().map(|&v| (v, Vec::new())).collect();
    for &(u, v) in edges {
        adj.get_mut(&u).unwrap().push(v);
        adj.get_mut(&v).unwrap().push(u);
    }
    let mut tree: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::from([(root, BTreeSet::new())]);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[&v] {
            if let std::collections::btree_map::Entry::Vacant(slot) = tree.entry(u) {
                slot.insert(BTreeSet::from([v]));
                tree.get_mut(&v).unwrap().insert(u);
                queue.push_back(u);
            }
        }
    }

    let keep: BTreeSet<NodeId> = contents.iter().copied().chain([root]).collect();
    let mut leaves: Vec<NodeId> =
        tree.iter().filter(|(v, nb)| nb.len() <= 1 && !keep.contains(v)).map(|(v, _)| *v).collect();
    while let Some(leaf) = leaves.pop() {
        let Some(nb) = tree.remove(&leaf) else { continue };
        for u in nb {
            let row = tree.get_mut(&u).unwrap();
            row.remove(&leaf);
            if row.len() <= 1 && !keep.contains(&u) {
                leaves.push(u);
            }
        }
    }

    let nodes: Vec<NodeId> = tree.keys().copied().collect();
    let edges = tree.iter().flat_map(|(&u, nb)| nb.range(u..).map(move |&v| (u, v))).collect();
    (nodes, edges)
}
