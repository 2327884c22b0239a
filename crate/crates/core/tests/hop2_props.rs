mod common;

use common::{dijkstra, spec};
use gks_core::hop2::degree_order;
use gks_core::{NodeId, TwoHopIndex};
use proptest::prelude::*;

fn radius() -> impl Strategy<Value = f64> {
    prop_oneof![Just(f64::INFINITY), (1u32..=512).prop_map(|x| x as f64 / 64.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distances_match_dijkstra_within_radius(s in spec(40, false, true), d_max in radius()) {
        let g = s.build();
        let ix = TwoHopIndex::build(&g, d_max).unwrap();
        for u in g.node_ids() {
            let truth = dijkstra(&g, u);
            for v in g.node_ids() {
                let d = truth[v.index()];
                let expect = (d.is_finite() && d <= d_max).then_some(d);
                prop_assert_eq!(ix.distance(u, v), expect, "pair {} {}", u, v);
            }
        }
    }

    #[test]
    fn paths_are_real_and_tight(s in spec(40, true, true), d_max in radius()) {
        let g = s.build();
        let ix = TwoHopIndex::build(&g, d_max).unwrap();
        for u in g.node_ids() {
            for v in g.node_ids() {
                let (d, p) = (ix.distance(u, v), ix.shortest_path(u, v));
                prop_assert_eq!(d.is_some(), p.is_some());
                let (Some(d), Some(p)) = (d, p) else { continue };
                prop_assert_eq!(p.first(), Some(&u));
                prop_assert_eq!(p.last(), Some(&v));
                let mut sum = 0.0;
                for w in p.windows(2) {
                    let e = g.edge_weight(w[0], w[1]);
                    prop_assert!(e.is_some(), "{} -- {} is not an edge", w[0], w[1]);
                    sum += e.unwrap();
                }
                prop_assert_eq!(sum, d);
                let mut seen = p.clone();
                seen.sort();
                seen.dedup();
                prop_assert_eq!(seen.len(), p.len(), "path revisits a node");
            }
        }
    }

    #[test]
    fn distance_is_symmetric(s in spec(30, false, true), d_max in radius()) {
        let g = s.build();
        let ix = TwoHopIndex::build(&g, d_max).unwrap();
        for u in g.node_ids() {
            for v in g.node_ids() {
                prop_assert_eq!(ix.distance(u, v), ix.distance(v, u));
            }
        }
    }

    #[test]
    fn codec_round_trip(s in spec(30, false, true), d_max in radius()) {
        let g = s.build();
        let ix = TwoHopIndex::build(&g, d_max).unwrap();
        let bytes = ix.to_bytes();
        prop_assert_eq!(bytes.len(), 20 + 4 * g.node_count() + 16 * ix.total_entries());
        prop_assert_eq!(TwoHopIndex::from_bytes(&bytes).unwrap(), ix);
    }

    #[test]
    fn truncation_keeps_exactly_the_short_entries(s in spec(30, false, true), d_max in radius()) {
        let g = s.build();
        let full = TwoHopIndex::build(&g, f64::INFINITY).unwrap();
        let cut = TwoHopIndex::build(&g, d_max).unwrap();
        prop_assert!(cut.total_entries() <= full.total_entries());
        for v in g.node_ids() {
            let kept: Vec<_> = full.label(v).filter(|e| e.dist <= d_max).map(|e| (e.hub, e.dist)).collect();
            let got: Vec<_> = cut.label(v).map(|e| (e.hub, e.dist)).collect();
            prop_assert_eq!(got, kept);
        }
    }

    #[test]
    fn entries_grow_with_radius(s in spec(30, false, false), a in 1u32..=256, b in 1u32..=256) {
        let g = s.build();
        let (lo, hi) = (a.min(b) as f64 / 64.0, a.max(b) as f64 / 64.0);
        let small = TwoHopIndex::build(&g, lo).unwrap().total_entries();
        let large = TwoHopIndex::build(&g, hi).unwrap().total_entries();
        prop_assert!(small <= large);
    }

    #[test]
    fn hubs_outrank_owners(s in spec(30, false, true)) {
        let g = s.build();
        let ix = TwoHopIndex::build(&g, f64::INFINITY).unwrap();
        let mut rank = vec![0usize; g.node_count()];
        for (r, v) in degree_order(&g).into_iter().enumerate() {
            rank[v.index()] = r;
        }
        for v in g.node_ids() {
            let label: Vec<_> = ix.label(v).collect();
            prop_assert!(label.windows(2).all(|w| w[0].hub < w[1].hub));
            prop_assert!(label.iter().all(|e| rank[e.hub.index()] <= rank[v.index()]));
            prop_assert!(label.iter().any(|e| e.hub == v && e.dist == 0.0 && e.parent == v));
        }
    }
}

#[test]
fn isolated_nodes_only_reach_themselves() {
    let s = common::Spec { importance: vec![1.0; 3], texts: vec![String::new(); 3], edges: vec![] };
    let g = s.build();
    let ix = TwoHopIndex::build(&g, f64::INFINITY).unwrap();
    assert_eq!(ix.distance(NodeId(0), NodeId(0)), Some(0.0));
    assert_eq!(ix.distance(NodeId(0), NodeId(2)), None);
    assert_eq!(ix.total_entries(), 3);
}
