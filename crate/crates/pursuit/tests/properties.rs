//! Randomized invariant checks for the core machinery.

use proptest::prelude::*;

use pursuit::enumerate::connected_graphs;
use pursuit::game::{robber_moves_from, GameConfig, Speed};
use pursuit::graph::{Graph, VertexSet};
use pursuit::hall::{check_partition, split_hall};
use pursuit::lab::gnp;
use pursuit::solver::{cop_number, DEFAULT_BUDGET};
use pursuit::trim::{trim, verify};

fn arb_gnp(max_n: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n, 0.05f64..0.9, any::<u64>())
        .prop_map(|(n, p, seed)| gnp(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ball_is_monotone_in_radius(g in arb_gnp(16), v in 0usize..16, r in 0usize..5) {
        let v = v % g.n();
        let mut s = VertexSet::new(g.n());
        s.insert(v);
        let inner = g.ball(&s, r);
        let outer = g.ball(&s, r + 1);
        prop_assert!(inner.iter().all(|w| outer.contains(w)));
        prop_assert!(inner.contains(v));
    }

    #[test]
    fn robber_moves_nest_in_speed(g in arb_gnp(14), v in 0usize..14, c in 0usize..14) {
        let v = v % g.n();
        let c = c % g.n();
        if c == v { return Ok(()); }
        let cops = vec![c];
        let mut prev: Option<Vec<usize>> = None;
        for r in 1..=4 {
            let cur = robber_moves_from(&g, &cops, v, Speed::Finite(r));
            prop_assert!(cur.contains(&v), "staying put is always legal");
            prop_assert!(!cur.contains(&c), "cop vertex never enterable");
            if let Some(p) = &prev {
                prop_assert!(p.iter().all(|w| cur.contains(w)));
            }
            prev = Some(cur);
        }
        let inf = robber_moves_from(&g, &cops, v, Speed::Infinite);
        prop_assert!(prev.unwrap().iter().all(|w| inf.contains(w)));
    }

    #[test]
    fn trim_certificates_verify(g in arb_gnp(18), p in 0.25f64..0.6) {
        let cert = trim(&g, p, g.n().min(8));
        prop_assert!(verify(&g, &cert).is_ok(), "{:?}", verify(&g, &cert));
        // total budget claim
        let removed = g.n() - cert.residual.len();
        prop_assert!(cert.total_cops as f64 <= p * removed as f64 + 1e-9);
    }

    #[test]
    fn split_hall_postconditions(
        sizes in (1usize..=5, 1usize..=6),
        edges in prop::collection::vec((0usize..5, 0usize..6), 0..20),
        k in prop::sample::select(vec![0.5f64, 1.0, 1.5, 2.0]),
    ) {
        let (a, b) = sizes;
        let mut adj = vec![vec![]; a];
        for (i, j) in edges {
            if i < a && j < b && !adj[i].contains(&j) {
                adj[i].push(j);
            }
        }
        let part = split_hall(&adj, b, k);
        prop_assert!(check_partition(&adj, b, k, &part));
    }

    #[test]
    fn playout_traces_replay(g in arb_gnp(10), seed in any::<u64>(), c in 1usize..3) {
        use pursuit::controllers::{RandomCop, RandomRobber};
        use pursuit::game::play;
        let cfg = GameConfig::new(c, Speed::Finite(1), false);
        let mut cop = RandomCop::new(c, seed);
        let mut rob = RandomRobber::new(seed ^ 1);
        let trace = play(&g, &cfg, &mut cop, &mut rob, 30, seed);
        prop_assert!(trace.replays(&g, &cfg));
    }
}

#[test]
fn cop_number_is_isomorphism_invariant_on_small_graphs() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for g in connected_graphs(5) {
        let base = cop_number(&g, Speed::Finite(1), DEFAULT_BUDGET)
            .unwrap()
            .cop_number;
        for _ in 0..2 {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            let edges: Vec<(usize, usize)> =
                g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
            let h = Graph::from_edges(g.n(), false, &edges).unwrap();
            let relabeled = cop_number(&h, Speed::Finite(1), DEFAULT_BUDGET)
                .unwrap()
                .cop_number;
            assert_eq!(base, relabeled);
        }
    }
}
