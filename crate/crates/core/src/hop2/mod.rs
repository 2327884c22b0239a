//! Distance-bounded 2-hop cover (hub labeling).
//!
//! Every node `v` carries a label `L(v)` of `(hub, dist, parent)` triples
//! sorted by hub id. `dist(s, t)` is the minimum of `d(h, s) + d(h, t)` over
//! hubs common to both labels, found with a linear merge join. Labels only
//! hold distances up to `d_max`; pairs farther apart report as disconnected.
//! The `parent` of an entry is the predecessor of the owner on the shortest
//! path from the hub, which is enough to walk a full path back to the hub.

mod build;
mod codec;

pub use build::degree_order;
pub use codec::{FORMAT_VERSION, MAGIC};

use crate::graph::{Graph, NodeId};

/// One label triple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabelEntry {
    pub hub: NodeId,
    pub dist: f64,
    pub parent: NodeId,
}

/// Size figures for one built index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexStats {
    pub nodes: usize,
    pub entries: usize,
    pub mean_label_len: f64,
    /// Size of the serialized file.
    pub bytes: usize,
}

/// Label sets of all nodes, stored as parallel arrays in compressed form.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoHopIndex {
    d_max: f64,
    offsets: Vec<usize>,
    hubs: Vec<NodeId>,
    dists: Vec<f64>,
    parents: Vec<NodeId>,
}

/// `10 ×` the mean edge weight of `g`; unbounded for an edgeless graph.
pub fn default_d_max(g: &Graph) -> f64 {
    match g.mean_edge_weight() {
        Some(mean) if mean > 0.0 => 10.0 * mean,
        _ => f64::INFINITY,
    }
}

impl TwoHopIndex {
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    pub fn label_len(&self, v: NodeId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    pub fn label(&self, v: NodeId) -> impl ExactSizeIterator<Item = LabelEntry> + '_ {
        let range = self.offsets[v.index()]..self.offsets[v.index() + 1];
        range.map(move |i| LabelEntry { hub: self.hubs[i], dist: self.dists[i], parent: self.parents[i] })
    }

    pub fn total_entries(&self) -> usize {
        self.hubs.len()
    }

    pub fn stats(&self) -> IndexStats {
        let nodes = self.node_count();
        let entries = self.total_entries();
        IndexStats {
            nodes,
            entries,
            mean_label_len: if nodes == 0 { 0.0 } else { entries as f64 / nodes as f64 },
            bytes: codec::encoded_len(nodes, entries),
        }
    }

    /// Merge join over the two labels; returns `(dist, slot in L(s), slot in L(t))`
    /// of the first minimizing common hub.
    #[inline]
    fn meet(&self, s: NodeId, t: NodeId) -> Option<(f64, usize, usize)> {
        let (mut i, end_s) = (self.offsets[s.index()], self.offsets[s.index() + 1]);
        let (mut j, end_t) = (self.offsets[t.index()], self.offsets[t.index() + 1]);
        let mut best: Option<(f64, usize, usize)> = None;
        while i < end_s && j < end_t {
            let (hs, ht) = (self.hubs[i], self.hubs[j]);
            if hs < ht {
                i += 1;
            } else if hs > ht {
                j += 1;
            } else {
                let d = self.dists[i] + self.dists[j];
                if best.is_none_or(|(b, _, _)| d < b) {
                    best = Some((d, i, j));
                }
                i += 1;
                j += 1;
            }
        }
        best.filter(|&(d, _, _)| d <= self.d_max)
    }

    /// Shortest distance, or `None` when the nodes are disconnected or
    /// farther apart than `d_max`.
    #[inline]
    pub fn distance(&self, s: NodeId, t: NodeId) -> Option<f64> {
        self.meet(s, t).map(|(d, _, _)| d)
    }

    /// Nearest of `candidates` to `s`; ties go to the earlier candidate.
    pub fn nearest(&self, s: NodeId, candidates: &[NodeId]) -> Option<(NodeId, f64)> {
        let mut best: Option<(NodeId, f64)> = None;
        for &c in candidates {
            if let Some(d) = self.distance(s, c) {
                if best.is_none_or(|(_, b)| d < b) {
                    best = Some((c, d));
                }
            }
        }
        best
    }

    fn entry_for_hub(&self, v: NodeId, hub: NodeId) -> Option<usize> {
        let range = self.offsets[v.index()]..self.offsets[v.index() + 1];
        self.hubs[range.clone()].binary_search(&hub).ok().map(|k| range.start + k)
    }

    /// Follows parent pointers from `from` (label slot `slot`) up to the hub.
    fn climb(&self, from: NodeId, mut slot: usize, out: &mut Vec<NodeId>) -> Option<()> {
        let hub = self.hubs[slot];
        let mut cur = from;
        out.push(cur);
        // a well-formed index reaches the hub in fewer than n steps
        for _ in 0..self.node_count() {
            if cur == hub {
                return Some(());
            }
            cur = self.parents[slot];
            out.push(cur);
            slot = self.entry_for_hub(cur, hub)?;
        }
        (cur == hub).then_some(())
    }

    /// Node sequence from `s` to `t` along a shortest path, or `None` when
    /// [`distance`](Self::distance) is `None`.
    pub fn shortest_path(&self, s: NodeId, t: NodeId) -> Option<Vec<NodeId>> {
        let (_, slot_s, slot_t) = self.meet(s, t)?;
        let mut path = Vec::new();
        self.climb(s, slot_s, &mut path)?;
        let mut tail = Vec::new();
        self.climb(t, slot_t, &mut tail)?;
        tail.pop();
        path.extend(tail.into_iter().rev());
        Some(remove_cycles(path))
    }
}

/// Cuts out any closed loop, keeping the first and last occurrence joined.
/// Only relevant with zero-weight edges, where two halves of a path may touch.
fn remove_cycles(path: Vec<NodeId>) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = Vec::with_capacity(path.len());
    for v in path {
        if let Some(pos) = out.iter().position(|&x| x == v) {
            out.truncate(pos + 1);
        } else {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    pub(crate) fn path_graph(n: usize, w: f64) -> Graph {
        let mut b = GraphBuilder::new();
        for _ in 0..n {
            b.add_node(1.0, "t", "").unwrap();
        }
        for i in 1..n {
            b.add_edge(NodeId::new(i - 1), NodeId::new(i), w).unwrap();
        }
        b.build()
    }

    #[test]
    fn path_graph_distances() {
        let g = path_graph(4, 1.0);
        let ix = TwoHopIndex::build(&g, f64::INFINITY).unwrap();
        assert_eq!(ix.distance(NodeId(0), NodeId(3)), Some(3.0));
        assert_eq!(ix.shortest_path(NodeId(0), NodeId(3)).unwrap(), [0, 1, 2, 3].map(NodeId));
        assert_eq!(ix.shortest_path(NodeId(3), NodeId(0)).unwrap(), [3, 2, 1, 0].map(NodeId));

        let ix = TwoHopIndex::build(&g, 2.0).unwrap();
        assert_eq!(ix.distance(NodeId(0), NodeId(3)), None);
        assert_eq!(ix.shortest_path(NodeId(0), NodeId(3)), None);
        assert_eq!(ix.distance(NodeId(0), NodeId(2)), Some(2.0));
    }

    #[test]
    fn self_distance_and_path() {
        let g = path_graph(5, 0.5);
        let ix = TwoHopIndex::build(&g, f64::INFINITY).unwrap();
        for v in g.node_ids() {
            assert_eq!(ix.distance(v, v), Some(0.0));
            assert_eq!(ix.shortest_path(v, v).unwrap(), vec![v]);
        }
    }

    #[test]
    fn single_node_label() {
        let g = path_graph(1, 1.0);
        let ix = TwoHopIndex::build(&g, 1.0).unwrap();
        let label: Vec<_> = ix.label(NodeId(0)).collect();
        assert_eq!(label, vec![LabelEntry { hub: NodeId(0), dist: 0.0, parent: NodeId(0) }]);
        assert_eq!(ix.stats().entries, 1);
    }

    #[test]
    fn disconnected_components() {
        let mut b = GraphBuilder::new();
        for _ in 0..4 {
            b.add_node(1.0, "t", "").unwrap();
        }
        b.add_edge(NodeId(0), NodeId(1), 1.0).unwrap();
        b.add_edge(NodeId(2), NodeId(3), 1.0).unwrap();
        let ix = TwoHopIndex::build(&b.build(), f64::INFINITY).unwrap();
        assert_eq!(ix.distance(NodeId(0), NodeId(3)), None);
        assert_eq!(ix.distance(NodeId(2), NodeId(3)), Some(1.0));
    }

    #[test]
    fn zero_weight_paths_stay_simple() {
        // square with zero-weight sides: both halves of a path can share nodes
        let mut b = GraphBuilder::new();
        for _ in 0..4 {
            b.add_node(1.0, "t", "").unwrap();
        }
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            b.add_edge(NodeId(u), NodeId(v), 0.0).unwrap();
        }
        let g = b.build();
        let ix = TwoHopIndex::build(&g, f64::INFINITY).unwrap();
        for s in g.node_ids() {
            for t in g.node_ids() {
                let p = ix.shortest_path(s, t).unwrap();
                let mut seen = p.clone();
                seen.sort();
                seen.dedup();
                assert_eq!(seen.len(), p.len(), "{p:?}");
                assert!(p.windows(2).all(|w| g.edge_weight(w[0], w[1]).is_some()));
            }
        }
    }

    #[test]
    fn remove_cycles_cuts_loops() {
        let p = [1, 2, 3, 2, 4].map(NodeId).to_vec();
        assert_eq!(remove_cycles(p), [1, 2, 4].map(NodeId));
    }

    #[test]
    fn default_radius() {
        let g = path_graph(3, 0.1);
        assert!((default_d_max(&g) - 1.0).abs() < 1e-12);
        assert_eq!(default_d_max(&path_graph(1, 1.0)), f64::INFINITY);
    }
}
