#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use gks_core::{Graph, GraphBuilder, NodeId};
use proptest::prelude::*;

/// Plain Dijkstra from `s`; `INFINITY` for unreachable nodes.
pub fn dijkstra(g: &Graph, s: NodeId) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.node_count()];
    let mut heap = BinaryHeap::new();
    dist[s.index()] = 0.0;
    heap.push(Reverse((Key(0.0), s)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if d > dist[u.index()] {
            continue;
        }
        for (v, w) in g.neighbors(u) {
            let nd = d + w;
            if nd < dist[v.index()] {
                dist[v.index()] = nd;
                heap.push(Reverse((Key(nd), v)));
            }
        }
    }
    dist
}

#[derive(Clone, Copy, PartialEq)]
pub struct Key(pub f64);
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl std::cmp::Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Raw graph description: node importances, texts and `(u, v, weight)` edges.
#[derive(Clone, Debug)]
pub struct Spec {
    pub importance: Vec<f64>,
    pub texts: Vec<String>,
    pub edges: Vec<(u32, u32, f64)>,
}

impl Spec {
    pub fn build(&self) -> Graph {
        let mut b = GraphBuilder::new();
        for (imp, text) in self.importance.iter().zip(&self.texts) {
            b.add_node(*imp, "t", text.as_str()).unwrap();
        }
        for &(u, v, w) in &self.edges {
            b.add_edge(NodeId(u), NodeId(v), w).unwrap();
        }
        b.build()
    }
}

const VOCAB: [&str; 6] = ["alpha", "beta", "gamma", "delta", "eps", "zeta"];

fn text() -> impl Strategy<Value = String> {
    prop::collection::vec(0..VOCAB.len(), 0..4).prop_map(|ws| ws.iter().map(|&i| VOCAB[i]).collect::<Vec<_>>().join(" "))
}

/// Weights are multiples of 1/64 in `[0, 2]`, so path sums are exact.
pub fn spec(max_nodes: usize, connected: bool, zero_weights: bool) -> impl Strategy<Value = Spec> {
    (1..=max_nodes).prop_flat_map(move |n| {
        let lo = if zero_weights { 0u32 } else { 1 };
        let imps = prop::collection::vec(1u32..=16, n).prop_map(|v| v.into_iter().map(|x| x as f64 / 16.0).collect());
        let texts = prop::collection::vec(text(), n);
        let tree = prop::collection::vec((any::<prop::sample::Index>(), lo..=128u32), n.saturating_sub(1));
        let extra = prop::collection::vec((0..n as u32, 0..n as u32, lo..=128u32), 0..=2 * n);
        (imps, texts, tree, extra).prop_map(move |(importance, texts, tree, extra)| {
            let mut edges = Vec::new();
            if connected {
                for (i, (parent, w)) in tree.into_iter().enumerate() {
                    let child = i + 1;
                    edges.push((parent.index(child) as u32, child as u32, w as f64 / 64.0));
                }
            }
            edges.extend(extra.into_iter().filter(|(u, v, _)| u != v).map(|(u, v, w)| (u, v, w as f64 / 64.0)));
            Spec { importance, texts, edges }
        })
    })
}

pub fn vocab() -> &'static [&'static str] {
    &VOCAB
}
