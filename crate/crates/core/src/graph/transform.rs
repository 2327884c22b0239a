//! Graph transforms that move node importance onto edges.

use super::Graph;

impl Graph {
    /// Blends importance and base weight:
    /// `w'(u, v) = λ·(imp'(u) + imp'(v)) + 2·(1 − λ)·w(u, v)`.
    ///
    /// At `λ = 1` the result is bit-identical to
    /// [`transform_node_importance`](Self::transform_node_importance); at
    /// `λ = 0` every weight is exactly `2·w`.
    pub fn transform_combined(&self, lambda: f64) -> Graph {
        assert!((0.0..=1.0).contains(&lambda), "lambda must lie in [0, 1], got {lambda}");
        self.reweighted(|u, v, w| {
            let iu = self.node(u).inverse_importance();
            let iv = self.node(v).inverse_importance();
            lambda * (iu + iv) + 2.0 * (1.0 - lambda) * w
        })
    }

    /// `w''(u, v) = imp'(u) + imp'(v)`; independent of any trade-off.
    pub fn transform_node_importance(&self) -> Graph {
        self.reweighted(|u, v, _| self.node(u).inverse_importance() + self.node(v).inverse_importance())
    }
}
