//! Shared workloads for the criterion benchmarks.

use gks_core::synth::{Recipe, Topology};
use gks_core::{Graph, InvertedIndex};

/// Scale-free graph with a `w0..` vocabulary and weights in `[0.01, 1]`.
pub fn graph(nodes: usize, seed: u64) -> Graph {
    Recipe::new(nodes, Topology::ScaleFree { m: 2 })
        .weights(0.01, 1.0)
        .importance(0.1, 1.0)
        .vocabulary((nodes / 8).max(4), 1)
        .generate(seed)
}

/// The `count` most frequent words of `text`, rarest first.
pub fn keywords(text: &InvertedIndex, count: usize) -> Vec<String> {
    let mut words: Vec<(usize, String)> = text.iter().map(|(t, ids)| (ids.len(), t.to_string())).collect();
    words.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut picked: Vec<String> = words.into_iter().take(count).map(|(_, w)| w).collect();
    picked.reverse();
    picked
}
