//! Seeded synthetic graphs for tests and benchmarks.
//!
//! Edge weights are drawn on a dyadic grid (multiples of 2^-20) so that path
//! sums of moderate length are exact in `f64`; this keeps distance
//! comparisons between independent computations free of rounding noise.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphBuilder, NodeId};

const GRID: f64 = (1u64 << 20) as f64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Topology {
    /// Random spanning tree plus uniformly random extra edges up to the
    /// requested average degree.
    Random { avg_degree: f64 },
    /// Preferential attachment: every new node links to `m` existing nodes
    /// chosen proportionally to degree.
    ScaleFree { m: usize },
}

/// Parameters of a synthetic graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Recipe {
    pub nodes: usize,
    pub topology: Topology,
    /// Inclusive weight range; `lo == hi` gives equal weights.
    pub weights: (f64, f64),
    /// Inclusive importance range, within `(0, 1]`.
    pub importance: (f64, f64),
    /// Size of the `w0 .. w{vocab-1}` vocabulary; 0 leaves texts empty.
    pub vocab: usize,
    /// Maximum words per node text; each node gets `0..=max` words.
    pub max_words: usize,
}

impl Recipe {
    pub fn new(nodes: usize, topology: Topology) -> Self {
        Recipe { nodes, topology, weights: (1.0, 1.0), importance: (1.0, 1.0), vocab: 0, max_words: 0 }
    }

    pub fn weights(mut self, lo: f64, hi: f64) -> Self {
        self.weights = (lo, hi);
        self
    }

    pub fn importance(mut self, lo: f64, hi: f64) -> Self {
        self.importance = (lo, hi);
        self
    }

    pub fn vocabulary(mut self, vocab: usize, max_words: usize) -> Self {
        self.vocab = vocab;
        self.max_words = max_words;
        self
    }

    pub fn generate(&self, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = GraphBuilder::with_capacity(self.nodes, self.nodes * 4);
        for _ in 0..self.nodes {
            let importance = sample(&mut rng, self.importance).clamp(f64::MIN_POSITIVE, 1.0);
            let words = if self.vocab == 0 { 0 } else { rng.gen_range(0..=self.max_words) };
            let text: Vec<String> = (0..words).map(|_| format!("w{}", rng.gen_range(0..self.vocab))).collect();
            b.add_node(importance, "synthetic", text.join(" ")).expect("importance in range");
        }
        let add = |b: &mut GraphBuilder, rng: &mut ChaCha8Rng, u: usize, v: usize| {
            let mut w = dyadic(sample(rng, self.weights));
            if w < self.weights.0 {
                w += 1.0 / GRID;
            }
            b.add_edge(NodeId::new(u), NodeId::new(v), w).expect("valid edge");
        };
        let n = self.nodes;
        match self.topology {
            Topology::Random { avg_degree } => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                for i in 1..n {
                    let j = rng.gen_range(0..i);
                    add(&mut b, &mut rng, order[i], order[j]);
                }
                let target = ((avg_degree * n as f64) / 2.0).round() as usize;
                for _ in n.saturating_sub(1)..target {
                    let u = rng.gen_range(0..n);
                    let v = rng.gen_range(0..n);
                    if u != v {
                        add(&mut b, &mut rng, u, v);
                    }
                }
            }
            Topology::ScaleFree { m } => {
                // endpoint list: sampling from it is degree-proportional
                let mut ends: Vec<usize> = Vec::with_capacity(2 * m * n);
                let seed_size = (m + 1).min(n);
                for u in 0..seed_size {
                    for v in 0..u {
                        add(&mut b, &mut rng, u, v);
                        ends.extend([u, v]);
                    }
                }
                for u in seed_size..n {
                    let mut picked: Vec<usize> = Vec::with_capacity(m);
                    while picked.len() < m.min(u) {
                        let v = ends[rng.gen_range(0..ends.len())];
                        if !picked.contains(&v) {
                            picked.push(v);
                        }
                    }
                    for v in picked {
                        add(&mut b, &mut rng, u, v);
                        ends.extend([u, v]);
                    }
                }
            }
        }
        b.build()
    }
}

fn sample(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo >= hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

/// Rounds to the nearest multiple of 2^-20.
pub fn dyadic(x: f64) -> f64 {
    (x * GRID).round() / GRID
}

/// `count` uniformly random node pairs.
pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(NodeId, NodeId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (NodeId::new(rng.gen_range(0..n)), NodeId::new(rng.gen_range(0..n)))).collect()
}
