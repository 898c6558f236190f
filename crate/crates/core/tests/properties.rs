use hypertour_core::designs::{scale, validate_design, DesignSpec};
use hypertour_core::oracle::{brute_matching, oracle_euler, OracleMode, ORACLE_STATE_CAP};
use hypertour_core::parity::BARRIER_STATE_CAP;
use hypertour_core::{
    delta, euler_family, find_barrier_brute_force, find_even_x2_subgraph, max_matching,
    spanning_euler_tour, verify, BipartiteGraph, Hypergraph, Node, SimpleGraph, SpanningOutcome,
};
use proptest::prelude::*;

fn hypergraph(max_n: usize, max_m: usize, max_size: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=max_size.min(n));
        proptest::collection::vec(edge, 1..=max_m)
            .prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
    })
}

fn bipartite() -> impl Strategy<Value = BipartiteGraph> {
    (1..=6usize, 1..=6usize).prop_flat_map(|(xc, yc)| {
        proptest::collection::vec(any::<bool>(), xc * yc).prop_map(move |bits| {
            let pairs: Vec<_> = (0..xc * yc)
                .filter(|&i| bits[i])
                .map(|i| (i / yc, i % yc))
                .collect();
            BipartiteGraph::new(xc, yc, &pairs).unwrap()
        })
    })
}

fn simple_graph() -> impl Strategy<Value = SimpleGraph> {
    (0..=12usize).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            edges.push((u, v));
                        }
                        i += 1;
                    }
                }
                SimpleGraph::from_edges(n, &edges).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn handshake(h in hypergraph(8, 8, 5)) {
        let total: usize = h.degrees().iter().sum();
        let sizes: usize = h.edges().iter().map(Vec::len).sum();
        prop_assert_eq!(total, sizes);
        prop_assert_eq!(h.incidence().edge_count(), sizes);
    }

    #[test]
    fn delta_even(g in bipartite(), picks in proptest::collection::vec(0u8..3, 12)) {
        let s: Vec<usize> = (0..g.x_count()).filter(|&x| picks[x] == 0).collect();
        let mut t: Vec<Node> = (0..g.x_count()).filter(|&x| picks[x] == 1).map(Node::X).collect();
        t.extend((0..g.y_count()).filter(|&y| picks[6 + y] == 2).map(Node::Y));
        prop_assert_eq!(delta(&g, &s, &t).unwrap() % 2, 0);
    }

    #[test]
    fn factor_iff_no_barrier(h in hypergraph(6, 6, 4)) {
        let g = h.incidence();
        let sub = find_even_x2_subgraph(&g);
        let barrier = find_barrier_brute_force(&g, BARRIER_STATE_CAP).unwrap();
        prop_assert_ne!(sub.is_some(), barrier.is_some());
        if let Some(s) = sub {
            prop_assert!(s.check_even_x2(&g).is_ok());
        }
        if let Some(b) = barrier {
            prop_assert!(b.delta < 0);
            prop_assert_eq!(delta(&g, &b.s, &b.t).unwrap(), b.delta);
        }
    }

    #[test]
    fn family_matches_oracle(h in hypergraph(6, 5, 4)) {
        let oracle = oracle_euler(&h, OracleMode::Family, ORACLE_STATE_CAP).unwrap();
        let fam = euler_family(&h).unwrap();
        prop_assert_eq!(fam.is_some(), oracle.family_exists);
        if let Some(f) = fam {
            prop_assert!(verify(&h, &f, false, false).is_family);
        }
    }

    #[test]
    fn verdicts_nest(h in hypergraph(6, 5, 4)) {
        let v = oracle_euler(&h, OracleMode::SpanningTour, ORACLE_STATE_CAP).unwrap();
        prop_assert!(!v.spanning_tour_exists || v.tour_exists);
        prop_assert!(!v.tour_exists || v.family_exists);
    }

    #[test]
    fn spanning_tour_sound(h in hypergraph(6, 6, 4)) {
        if let SpanningOutcome::Found(tour) = spanning_euler_tour(&h).unwrap() {
            let oracle = oracle_euler(&h, OracleMode::SpanningTour, ORACLE_STATE_CAP).unwrap();
            prop_assert!(oracle.spanning_tour_exists, "tour {} not confirmed", tour);
        }
    }

    #[test]
    fn strong_cut_edge_blocks_family(h in hypergraph(7, 6, 4)) {
        if !h.strong_cut_edges().is_empty() {
            prop_assert!(find_even_x2_subgraph(&h.incidence()).is_none());
        }
    }

    #[test]
    fn flag_connectivity_monotone(h in hypergraph(6, 5, 4), k in 1usize..4) {
        let weaker = h.is_flag_connected(k, 1_000_000).unwrap();
        let stronger = h.is_flag_connected(k + 1, 1_000_000).unwrap();
        prop_assert!(!stronger || weaker);
    }

    #[test]
    fn degree_ratio(h in hypergraph(9, 30, 5)) {
        let k = h.rank().unwrap();
        for j in 1..=k {
            for i in 0..j {
                match h.degree_ratio_holds(i, j) {
                    Ok(ok) => prop_assert!(ok, "({}, {})", i, j),
                    Err(hypertour_core::Error::ZeroDegree(_)) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
        }
    }

    #[test]
    fn matching_exact(g in simple_graph()) {
        let m = max_matching(&g);
        prop_assert_eq!(m.size(), brute_matching(&g, 12).unwrap());
        let mut seen = vec![false; g.node_count()];
        for (u, v) in m.edges() {
            prop_assert!(g.has_edge(u, v));
            prop_assert!(!std::mem::replace(&mut seen[u], true));
            prop_assert!(!std::mem::replace(&mut seen[v], true));
        }
    }

    #[test]
    fn scaling_commutes_with_validation(lambda in 1usize..4, n in prop::sample::select(vec![7usize, 9, 13])) {
        let sts = hypertour_core::designs::steiner_triple_system(n).unwrap();
        let scaled = scale(&sts, lambda).unwrap();
        let spec = DesignSpec::uniform(2, n, 3, lambda).unwrap();
        prop_assert!(validate_design(&scaled, &spec).unwrap());
        prop_assert_eq!(scaled.edge_count(), lambda * sts.edge_count());
    }

    #[test]
    fn text_round_trip(h in hypergraph(8, 8, 5)) {
        prop_assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
    }
}
