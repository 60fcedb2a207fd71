use proptest::prelude::*;

use cops_core::engine::{play, validate_transcript, ChaseCops, GameConfig, RandomRobber};
use cops_core::generators::random_connected;
use cops_core::guard::shadow;
use cops_core::solver::{is_k_copwin, SolverConfig};
use cops_core::{Graph, VertexSet};

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..16, 0.0f64..0.4, any::<u64>()).prop_map(|(n, p, s)| random_connected(n, p, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn balls_grow_with_radius(g in small_graph(), v in 0usize..16, r in 0usize..6) {
        let v = v % g.vertex_count();
        let a = VertexSet::singleton(g.vertex_count(), v);
        let b = g.ball(&a, r).unwrap();
        let b1 = g.ball(&a, r + 1).unwrap();
        prop_assert!(a.is_subset(&b));
        prop_assert!(b.is_subset(&b1));
        let d = g.bfs_from(v);
        prop_assert_eq!(b.len(), d.iter().filter(|x| x.is_some_and(|x| x <= r)).count());
    }

    #[test]
    fn geodesic_prefixes_are_geodesics(g in small_graph(), u in 0usize..16, v in 0usize..16) {
        let n = g.vertex_count();
        let p = g.shortest_path(u % n, v % n).unwrap();
        let d = g.bfs_from(u % n);
        for (i, &x) in p.iter().enumerate() {
            prop_assert_eq!(d[x], Some(i));
        }
    }

    #[test]
    fn deleting_a_path_partitions_the_rest(g in small_graph(), u in 0usize..16, v in 0usize..16) {
        let n = g.vertex_count();
        let p = g.shortest_path(u % n, v % n).unwrap();
        let removed = VertexSet::from_vertices(n, p.iter().copied());
        prop_assume!(removed.len() < n);
        let sub = g.delete_vertices(&removed).unwrap();
        let comps = sub.graph.components();
        let mut seen = vec![0; n];
        for c in &comps {
            for x in c.iter() {
                seen[sub.new_to_old[x]] += 1;
            }
        }
        for x in 0..n {
            prop_assert_eq!(seen[x], usize::from(!removed.contains(x)));
        }
        // no edge of g joins two different components
        let comp_of: Vec<Option<usize>> = (0..n)
            .map(|x| sub.old_to_new[x].map(|y| comps.iter().position(|c| c.contains(y)).unwrap()))
            .collect();
        for (a, b) in g.edges() {
            if let (Some(ca), Some(cb)) = (comp_of[a], comp_of[b]) {
                prop_assert_eq!(ca, cb);
            }
        }
    }

    #[test]
    fn shadow_moves_at_most_one(g in small_graph(), u in 0usize..16, v in 0usize..16) {
        let n = g.vertex_count();
        let p = g.shortest_path(u % n, v % n).unwrap();
        for (a, b) in g.edges() {
            let (sa, sb) = (shadow(&g, &p, a).unwrap(), shadow(&g, &p, b).unwrap());
            prop_assert!(sa.abs_diff(sb) <= 1);
        }
    }

    #[test]
    fn games_replay_identically(g in small_graph(), seed in any::<u64>()) {
        let cfg = GameConfig::new(1, 3 * g.vertex_count());
        let run = || play(&g, &mut ChaseCops { start: vec![0] }, &mut RandomRobber::new(seed), &cfg).unwrap();
        let (a, b) = (run(), run());
        prop_assert!(validate_transcript(&g, &a).is_ok());
        prop_assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn edge_list_round_trips(g in small_graph()) {
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn more_cops_never_hurt(n in 3usize..8, p in 0.0f64..0.5, s in any::<u64>()) {
        let g = random_connected(n, p, s).unwrap();
        let cfg = SolverConfig::default();
        let wins: Vec<bool> = (1..=3).map(|k| is_k_copwin(&g, k, &cfg).unwrap().wins).collect();
        prop_assert!(wins.windows(2).all(|w| !w[0] || w[1]));
    }
}
