mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use amalgamlab::arith::{factorize128, primitive_prime_divisors};
use amalgamlab::catalog::{build_alt, build_sym};
use amalgamlab::graphs::*;
use amalgamlab::{Group, Perm};

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn small_group(k: u8) -> Group {
    match k % 4 {
        0 => build_sym(5).unwrap(),
        1 => build_alt(6).unwrap(),
        2 => build_sym(4).unwrap(),
        _ => build_alt(7).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn composition_acts_left_to_right(p in arb_perm(7), q in arb_perm(7), r in arb_perm(7), x in 0u32..7) {
        prop_assert_eq!(p.compose(&q).apply(x), q.apply(p.apply(x)));
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn orbit_stabiliser(k in any::<u8>(), point in 0u32..4) {
        let g = small_group(k);
        let orbit = g.orbit(point).len() as u64;
        let stab = g.point_stabiliser(point).order_u64().unwrap();
        prop_assert_eq!(orbit * stab, g.order_u64().unwrap());
    }

    #[test]
    fn random_products_are_members(k in any::<u8>(), seed in any::<u64>()) {
        let g = small_group(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng).compose(&g.random_element(&mut rng));
        prop_assert!(g.contains(&x).unwrap());
        let i = g.element_index(&x).unwrap();
        prop_assert_eq!(g.element_at(i), x);
    }

    #[test]
    fn ppd_matches_order_oracle(q in 2u64..=20, n in 1u64..=20) {
        let r = primitive_prime_divisors(q, n).unwrap();
        prop_assert!(common::ppd_oracle_agrees(q, n, &r.primes));
        prop_assert_eq!(r.is_zsigmondy_exception, r.primes.is_empty());
        for &p in &r.primes {
            prop_assert_eq!(factorize128(p).unwrap(), vec![p]);
        }
    }

    #[test]
    fn coset_graphs_are_edge_transitive(n in 4usize..7, k in 1usize..3, twist in arb_perm(6)) {
        // A = a point stabiliser, B = the stabiliser of a k-set moved by `twist`.
        let g = build_sym(n).unwrap();
        let set: Vec<u32> = (0..k as u32).map(|i| twist.apply(i) % n as u32).collect();
        let mut set = set;
        set.sort_unstable();
        set.dedup();
        let b = g.setwise_stabiliser(&set, 10_000).unwrap();
        let a = g.point_stabiliser(0);
        let graph = coset_graph(&g, &a, &b).unwrap();
        prop_assert!(graph.is_edge_transitive());
        let (v, w) = (0, graph.neighbours(0)[0]);
        let o = EdgeOrders::of(&graph, v, w).unwrap();
        prop_assert_eq!(graph.valency(v) as u64, o.v / o.vw);
        prop_assert_eq!(graph.valency(w) as u64, o.w / o.vw);
    }

    #[test]
    fn cayley_invariants(idx in 0usize..5) {
        let (h, p) = [(2, 3), (2, 5), (3, 5), (3, 7), (4, 5)][idx];
        let graph = cayley_2at(&build_sym(h).unwrap(), p).unwrap();
        prop_assert_eq!(graph.vertex_count() as u64, 2 * p.pow(h as u32 - 1));
        prop_assert!((0..graph.vertex_count() as u32).all(|v| graph.valency(v) == h));
        let arcs = local_s_arc_transitivity(&graph, 2, 1).unwrap();
        prop_assert!(arcs.iter().all(|a| a.s >= 2));
    }

    #[test]
    fn local_two_arc_means_two_transitive_on_neighbours(n in 4usize..7, k in 1usize..3) {
        let g = build_sym(n).unwrap();
        let b = g.setwise_stabiliser(&(0..k as u32).collect::<Vec<_>>(), 10_000).unwrap();
        let graph = coset_graph(&g, &g.point_stabiliser(0), &b).unwrap();
        prop_assume!(graph.is_connected());
        for r in local_s_arc_transitivity(&graph, 2, 1).unwrap() {
            let local = graph.group().point_stabiliser(r.root).induced_action(graph.neighbours(r.root)).unwrap().image();
            let two = r.valency < 2 || local.is_k_transitive(2).unwrap();
            prop_assert_eq!(r.s >= 2, two);
        }
    }

    #[test]
    fn connected_symmetric_coset_graphs_are_soluble(n in 4usize..7, k in 1usize..3) {
        let g = build_sym(n).unwrap();
        let b = g.setwise_stabiliser(&(0..k as u32).collect::<Vec<_>>(), 10_000).unwrap();
        let graph = coset_graph(&g, &g.point_stabiliser(0), &b).unwrap();
        prop_assume!(graph.is_connected());
        prop_assert!(verify_composition_theorem(&graph, 0).unwrap().solubility);
    }
}
