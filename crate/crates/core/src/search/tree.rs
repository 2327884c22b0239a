//! Answer-tree assembly from root-to-content shortest paths.

use std::collections::{BTreeMap, BTreeSet};

use super::{AnswerTree, Query, SearchContext};
use crate::error::SearchError;
use crate::graph::{Edge, Graph, NodeId};
use crate::hop2::TwoHopIndex;

/// Joins the paths from `root` to each content node into one tree.
///
/// Paths are grafted in order: each new path is attached at the last of its
/// nodes already in the tree, so shared prefixes are stored once and the
/// result is always acyclic. Leaves that are neither content nodes nor the
/// root are then pruned. Returns ascending nodes and ascending `u < v` edges
/// weighted from `g`.
pub fn assemble_tree(
    g: &Graph,
    root: NodeId,
    contents: &[NodeId],
    mut path: impl FnMut(NodeId, NodeId) -> Option<Vec<NodeId>>,
) -> Result<(Vec<NodeId>, Vec<Edge>), SearchError> {
    let mut in_tree: BTreeSet<NodeId> = BTreeSet::from([root]);
    let mut adjacency: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::from([(root, BTreeSet::new())]);

    for &c in contents {
        let p = path(root, c).ok_or(SearchError::Disconnected(root, c))?;
        debug_assert_eq!(p.first(), Some(&root));
        debug_assert_eq!(p.last(), Some(&c));
        let attach = p.iter().rposition(|v| in_tree.contains(v)).unwrap_or(0);
        for w in p[attach..].windows(2) {
            in_tree.insert(w[1]);
            adjacency.entry(w[0]).or_default().insert(w[1]);
            adjacency.entry(w[1]).or_default().insert(w[0]);
        }
    }

    let keep: BTreeSet<NodeId> = contents.iter().copied().chain([root]).collect();
    let mut leaves: Vec<NodeId> =
        adjacency.iter().filter(|(v, nb)| nb.len() <= 1 && !keep.contains(v)).map(|(v, _)| *v).collect();
    while let Some(leaf) = leaves.pop() {
        let Some(nb) = adjacency.remove(&leaf) else { continue };
        for u in nb {
            let row = adjacency.get_mut(&u).expect("adjacency is symmetric");
            row.remove(&leaf);
            if row.len() <= 1 && !keep.contains(&u) {
                leaves.push(u);
            }
        }
    }

    let nodes: Vec<NodeId> = adjacency.keys().copied().collect();
    let mut edges = Vec::with_capacity(nodes.len().saturating_sub(1));
    for (&u, nb) in &adjacency {
        for &v in nb.range(u..) {
            let weight = g.edge_weight(u, v).expect("paths only use graph edges");
            edges.push(Edge { u, v, weight });
        }
    }
    Ok((nodes, edges))
}

impl SearchContext<'_> {
    /// Assembles and scores the tree for `root` with `contents[i]` assigned
    /// to the i-th query keyword.
    pub(crate) fn answer(
        &self,
        q: &Query,
        root: NodeId,
        contents: &[NodeId],
        index: &TwoHopIndex,
        search_score: f64,
    ) -> Result<AnswerTree, SearchError> {
        let (nodes, edges) = assemble_tree(self.graph, root, contents, |s, t| index.shortest_path(s, t))?;
        let scores = self.scores(&nodes, &edges, q.lambda, search_score);
        Ok(AnswerTree {
            root,
            assignment: q.keywords.iter().cloned().zip(contents.iter().copied()).collect(),
            nodes,
            edges,
            scores,
        })
    }
}

/// Structural check used by tests and debug assertions: `edges` form a single
/// tree spanning exactly `nodes`, and every leaf is in `allowed_leaves`.
pub fn is_minimal_tree(nodes: &[NodeId], edges: &[Edge], allowed_leaves: &[NodeId]) -> bool {
    if nodes.is_empty() || edges.len() + 1 != nodes.len() {
        return false;
    }
    let pos = |v: NodeId| nodes.binary_search(&v).ok();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut degree = vec![0usize; nodes.len()];
    for e in edges {
        let (Some(a), Some(b)) = (pos(e.u), pos(e.v)) else { return false };
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
        degree[a] += 1;
        degree[b] += 1;
    }
    nodes.len() == 1 || nodes.iter().zip(&degree).all(|(v, &d)| d != 1 || allowed_leaves.contains(v))
}
