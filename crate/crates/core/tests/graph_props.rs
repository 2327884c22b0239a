mod common;

use common::spec;
use gks_core::graph::io::{read_edges, read_nodes, write_edges, write_nodes};
use gks_core::{NodeId, WeightScheme};
use proptest::prelude::*;
use std::path::Path;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjacency_is_symmetric_and_sorted(s in spec(40, false, true)) {
        let g = s.build();
        for u in g.node_ids() {
            let row: Vec<NodeId> = g.neighbors(u).map(|(v, _)| v).collect();
            prop_assert!(row.windows(2).all(|w| w[0] < w[1]));
            for (v, w) in g.neighbors(u) {
                prop_assert_eq!(g.edge_weight(v, u), Some(w));
            }
        }
        prop_assert_eq!(g.edges().count(), g.edge_count());
    }

    #[test]
    fn parallel_edges_keep_the_minimum(s in spec(20, false, true)) {
        let g = s.build();
        for e in g.edges() {
            let min = s.edges.iter()
                .filter(|(a, b, _)| (NodeId(*a), NodeId(*b)) == (e.u, e.v) || (NodeId(*b), NodeId(*a)) == (e.u, e.v))
                .map(|x| x.2)
                .fold(f64::INFINITY, f64::min);
            prop_assert_eq!(e.weight, min);
        }
    }

    #[test]
    fn tsv_round_trip(s in spec(30, false, true)) {
        let g = s.build();
        let (mut nodes, mut edges) = (Vec::new(), Vec::new());
        write_nodes(&g, &mut nodes).unwrap();
        write_edges(&g, &mut edges).unwrap();
        let mut b = read_nodes(nodes.as_slice(), Path::new("n")).unwrap();
        read_edges(&mut b, edges.as_slice(), Path::new("e"), true).unwrap();
        let back = b.build();
        prop_assert_eq!(back.nodes(), g.nodes());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn transforms_at_the_extremes(s in spec(30, false, true), lambda in 0.0f64..=1.0) {
        let g = s.build();
        let zero = g.transform_combined(0.0);
        let one = g.transform_combined(1.0);
        let imp = g.transform_node_importance();
        for ((a, b), (c, d)) in g.edges().zip(zero.edges()).zip(one.edges().zip(imp.edges())) {
            prop_assert_eq!(b.weight, 2.0 * a.weight);
            prop_assert_eq!(c.weight, d.weight);
            let expect = g.node(a.u).inverse_importance() + g.node(a.v).inverse_importance();
            prop_assert_eq!(d.weight, expect);
        }
        let mid = g.transform_combined(lambda);
        prop_assert!(mid.edges().all(|e| e.weight >= 0.0));
        prop_assert_eq!(mid.edge_count(), g.edge_count());
    }

    #[test]
    fn scheme_application_is_idempotent(s in spec(30, false, true)) {
        let g = s.build();
        for scheme in [WeightScheme::Equal(0.25), WeightScheme::Logarithmic] {
            let once = g.apply_weight_scheme(scheme);
            let twice = once.apply_weight_scheme(scheme);
            prop_assert_eq!(once.edges().collect::<Vec<_>>(), twice.edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn normalization_inverts_the_means(s in spec(30, false, false)) {
        let g = s.build();
        let norm = g.normalization_constants();
        if let Some(mean) = g.mean_edge_weight() {
            prop_assert!((norm.ew_scale * mean - 1.0).abs() < 1e-12);
        } else {
            prop_assert_eq!(norm.ew_scale, 1.0);
        }
        let mean_ni = g.nodes().iter().map(|n| n.inverse_importance()).sum::<f64>() / g.node_count() as f64;
        prop_assert!((norm.ni_scale * mean_ni - 1.0).abs() < 1e-12);
    }
}
