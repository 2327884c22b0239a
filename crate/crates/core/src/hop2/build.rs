//! Pruned Dijkstra construction.
//!
//! Nodes are processed in descending degree order (ties by ascending id).
//! The search from the i-th node skips any settled node whose distance the
//! labels built so far already certify, and never relaxes beyond `d_max`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::TwoHopIndex;
use crate::error::IndexError;
use crate::graph::{Graph, NodeId};

/// Nodes by descending degree, ties by ascending id.
pub fn degree_order(g: &Graph) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = g.node_ids().collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    order
}

#[derive(Clone, Copy, PartialEq)]
struct Queued {
    dist: f64,
    node: NodeId,
}

impl Eq for Queued {}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Label entry during construction; the hub is stored as its rank so that
/// appending keeps each label sorted.
#[derive(Clone, Copy)]
struct RankedEntry {
    rank: u32,
    dist: f64,
    parent: NodeId,
}

impl TwoHopIndex {
    pub fn build(g: &Graph, d_max: f64) -> Result<Self, IndexError> {
        if d_max.is_nan() || d_max <= 0.0 {
            return Err(IndexError::InvalidDmax(d_max));
        }
        if let Some(e) = g.edges().find(|e| e.weight.is_nan() || e.weight < 0.0) {
            return Err(IndexError::NegativeWeight { u: e.u, v: e.v, weight: e.weight });
        }

        let n = g.node_count();
        let order = degree_order(g);
        let mut rank = vec![0u32; n];
        for (r, v) in order.iter().enumerate() {
            rank[v.index()] = r as u32;
        }

        let mut labels: Vec<Vec<RankedEntry>> = vec![Vec::new(); n];
        let mut tentative = vec![f64::INFINITY; n];
        let mut pred = vec![NodeId(0); n];
        let mut settled = vec![false; n];
        let mut touched: Vec<NodeId> = Vec::new();
        // distances from the current root to each hub in its own label
        let mut root_hub_dist = vec![f64::INFINITY; n];
        let mut heap = BinaryHeap::new();

        for (root_rank, &root) in order.iter().enumerate() {
            let root_rank = root_rank as u32;
            for e in &labels[root.index()] {
                root_hub_dist[e.rank as usize] = e.dist;
            }

            tentative[root.index()] = 0.0;
            pred[root.index()] = root;
            touched.push(root);
            heap.push(Queued { dist: 0.0, node: root });

            while let Some(Queued { dist, node: v }) = heap.pop() {
                if settled[v.index()] || dist > tentative[v.index()] {
                    continue;
                }
                settled[v.index()] = true;
                if v != root {
                    let certified = labels[v.index()]
                        .iter()
                        .any(|e| e.dist + root_hub_dist[e.rank as usize] <= dist);
                    if certified {
                        continue;
                    }
                }
                labels[v.index()].push(RankedEntry { rank: root_rank, dist, parent: pred[v.index()] });

                for (w, weight) in g.neighbors(v) {
                    // higher-ranked nodes are already fully covered by their own search
                    if rank[w.index()] < root_rank || settled[w.index()] {
                        continue;
                    }
                    let nd = dist + weight;
                    if nd <= d_max && nd < tentative[w.index()] {
                        if tentative[w.index()] == f64::INFINITY {
                            touched.push(w);
                        }
                        tentative[w.index()] = nd;
                        pred[w.index()] = v;
                        heap.push(Queued { dist: nd, node: w });
                    }
                }
            }

            for v in touched.drain(..) {
                tentative[v.index()] = f64::INFINITY;
                settled[v.index()] = false;
            }
            for e in &labels[root.index()] {
                root_hub_dist[e.rank as usize] = f64::INFINITY;
            }
        }

        let total: usize = labels.iter().map(Vec::len).sum();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut hubs = Vec::with_capacity(total);
        let mut dists = Vec::with_capacity(total);
        let mut parents = Vec::with_capacity(total);
        offsets.push(0);
        for label in labels {
            let mut label: Vec<_> = label
                .into_iter()
                .map(|e| (order[e.rank as usize], e.dist, e.parent))
                .collect();
            label.sort_by_key(|&(hub, _, _)| hub);
            for (hub, dist, parent) in label {
                hubs.push(hub);
                dists.push(dist);
                parents.push(parent);
            }
            offsets.push(hubs.len());
        }
        Ok(TwoHopIndex { d_max, offsets, hubs, dists, parents })
    }
}
