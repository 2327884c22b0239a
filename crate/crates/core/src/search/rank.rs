/// Top-`k` with unique-root semantics: ascending by `(score, root)`, one
/// entry per root (the best-scored one), at most `k` entries. The result
/// does not depend on the input order.
pub fn rank_topk<T>(mut candidates: Vec<T>, k: usize, key: impl Fn(&T) -> (f64, crate::graph::NodeId)) -> Vec<T> {
    candidates.sort_by(|a, b| {
        let (sa, ra) = key(a);
        let (sb, rb) = key(b);
        sa.total_cmp(&sb).then(ra.cmp(&rb))
    });
    let mut seen = std::collections::HashSet::new();
    candidates.retain(|c| seen.insert(key(c).1));
    candidates.truncate(k);
    candidates
}
