mod common;

use std::collections::HashSet;
use std::time::Instant;

use amalgamlab::catalog::{build_alt, build_sym, load_catalog};
use amalgamlab::golden::{self, ExampleConstruction};
use amalgamlab::graphs::*;
use amalgamlab::Group;
use common::{instances, product_k33, s4_pieces};

/// Right cosets as sets of element indices, by brute force.
fn cosets(g: &Group, h: &Group) -> Vec<HashSet<Vec<u32>>> {
    let hs = h.elements().unwrap();
    let mut out: Vec<HashSet<Vec<u32>>> = Vec::new();
    for x in g.elements().unwrap() {
        let c: HashSet<Vec<u32>> = hs.iter().map(|y| y.compose(&x).images().to_vec()).collect();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

#[test]
fn coset_graph_matches_intersection_table() {
    let (g, a, b) = s4_pieces();
    let graph = coset_graph(&g, &a, &b).unwrap();
    let (ca, cb) = (cosets(&g, &a), cosets(&g, &b));
    let mut degrees_a: Vec<usize> = ca.iter().map(|x| cb.iter().filter(|y| !x.is_disjoint(y)).count()).collect();
    let mut degrees_b: Vec<usize> = cb.iter().map(|y| ca.iter().filter(|x| !x.is_disjoint(y)).count()).collect();
    let brute_edges: usize = degrees_a.iter().sum();
    let parts = graph.parts().unwrap();
    assert_eq!((parts[0].len(), parts[1].len()), (ca.len(), cb.len()));
    assert_eq!(graph.edge_count(), brute_edges);
    let mut ours_a: Vec<usize> = parts[0].iter().map(|&v| graph.valency(v)).collect();
    let mut ours_b: Vec<usize> = parts[1].iter().map(|&v| graph.valency(v)).collect();
    for d in [&mut degrees_a, &mut degrees_b, &mut ours_a, &mut ours_b] {
        d.sort_unstable();
    }
    assert_eq!((ours_a, ours_b), (degrees_a, degrees_b));
    assert_eq!(graph.edge_count(), 12);
    assert!(graph.is_complete_bipartite() && graph.is_connected() && graph.is_edge_transitive());
    assert!(!graph.is_degenerate());
}

#[test]
fn degenerate_coset_graph_is_a_star() {
    let (g, a, _) = s4_pieces();
    let graph = coset_graph(&g, &g, &a).unwrap();
    assert!(graph.is_degenerate());
    assert_eq!(graph.vertex_count(), 5);
    assert_eq!(graph.valency(0), 4);
    let same = coset_graph(&g, &a, &a).unwrap();
    assert!(same.is_degenerate() && !same.is_connected());
}

#[test]
fn hexagon() {
    let c6 = cycle_graph(6).unwrap();
    let arcs = local_s_arc_transitivity(&c6, 5, 1).unwrap();
    assert_eq!(arcs.len(), 1);
    assert_eq!((arcs[0].s, arcs[0].orbit_counts.clone()), (5, vec![1; 5]));
    assert!(vertex_kernel(&c6, 0).unwrap().is_trivial());
    assert_eq!(find_trivial_kernel_path(&c6, 0).unwrap(), vec![0]);
    let report = verify_composition_theorem(&c6, 0).unwrap();
    assert!(report.passed);
    for p in random_arcs(&c6, 10, 4, 1) {
        let r = verify_chains(&c6, &p).unwrap();
        assert!(r.passed && r.steps.iter().all(|s| s.kernel_order == 1));
    }
}

#[test]
fn k8_under_a8_is_2_but_not_3_arc_transitive() {
    let k8 = complete_graph(build_alt(8).unwrap()).unwrap();
    let arcs = local_s_arc_transitivity(&k8, 3, 1).unwrap();
    assert_eq!(arcs[0].s, 2);
    assert_eq!(arcs[0].orbit_counts, vec![1, 1, 2]);
    assert_eq!(arc_orbit_count(&k8, 2).unwrap(), 1);
    assert_eq!(arc_orbit_count(&k8, 3).unwrap(), 2);
}

#[test]
fn cayley_on_s3_mod_5() {
    let t = Instant::now();
    let graph = cayley_2at(&build_sym(3).unwrap(), 5).unwrap();
    assert_eq!(graph.vertex_count(), 50);
    assert!((0..50).all(|v| graph.valency(v) == 3));
    assert_eq!(graph.group().point_stabiliser(0).order_u64(), Some(6));
    assert_eq!(arc_orbit_count(&graph, 2).unwrap(), 1);
    assert!(graph.is_connected());
    assert!(t.elapsed().as_secs() < 10);
}

#[test]
fn cayley_hexagon_and_bad_input() {
    let graph = cayley_2at(&build_sym(2).unwrap(), 3).unwrap();
    assert_eq!(graph.vertex_count(), 6);
    assert!((0..6).all(|v| graph.valency(v) == 2));
    assert!(graph.is_connected());
    assert!(cayley_2at(&build_sym(3).unwrap(), 3).is_err());
    assert!(cayley_2at(&build_sym(3).unwrap(), 4).is_err());
}

#[test]
fn bipartite_examples_build() {
    let cat = load_catalog().unwrap();
    for row in golden::examples().rows {
        if matches!(row.construction, ExampleConstruction::NotConstructible { .. }) {
            assert!(complete_bipartite_example(&row, cat).is_err());
            continue;
        }
        let t = Instant::now();
        let ex = complete_bipartite_example(&row, cat).unwrap();
        let arcs = local_s_arc_transitivity(&ex.graph, 2, 2).unwrap();
        println!("{} {:?} {:?} {:?}", row.group, ex.orders, arcs.iter().map(|a| a.s).collect::<Vec<_>>(), t.elapsed());
        assert!(ex.orders.factorises());
        assert!(ex.graph.is_connected() && ex.graph.is_edge_transitive());
        assert_eq!(arcs.len(), 2);
        assert!(arcs.iter().all(|a| a.s == 2));
    }
}

#[test]
fn composition_theorem_and_chains_on_every_instance() {
    let mut nonfaithful = 0;
    for (name, graph) in instances() {
        let t = Instant::now();
        let report = verify_composition_theorem(&graph, 0).unwrap();
        assert!(report.passed, "{name}: {report:?}");
        if report.kernel_orders.iter().any(|&k| k > 1) {
            nonfaithful += 1;
        }
        for p in random_arcs(&graph, 20, 4, 7) {
            let r = verify_chains(&graph, &p).unwrap();
            assert!(r.passed, "{name}: {r:?}");
        }
        println!("{name}: kernels {:?} in {:?}", report.kernel_orders, t.elapsed());
    }
    assert!(nonfaithful >= 1);
}

/// Elements fixing `points` pointwise, by enumeration.
fn brute_kernel_order(g: &Group, points: &[u32]) -> usize {
    g.elements().unwrap().iter().filter(|x| points.iter().all(|&p| x.apply(p) == p)).count()
}

#[test]
fn kernels_against_enumeration() {
    let cat = load_catalog().unwrap();
    let row = golden::examples().rows.into_iter().find(|r| r.group == "2^4:A7").unwrap();
    let graph = complete_bipartite_example(&row, cat).unwrap().graph;
    let k33 = product_k33();
    for g in [&graph, &k33] {
        for part in g.parts().unwrap() {
            let v = part[0];
            let mut pts = vec![v];
            pts.extend_from_slice(g.neighbours(v));
            assert_eq!(vertex_kernel(g, v).unwrap().order_u64(), Some(brute_kernel_order(g.group(), &pts) as u64));
            let w = g.neighbours(v)[0];
            pts.extend_from_slice(g.neighbours(w));
            assert_eq!(edge_kernel(g, v, w).unwrap().order_u64(), Some(brute_kernel_order(g.group(), &pts) as u64));
        }
    }
    assert_eq!(vertex_kernel(&k33, 0).unwrap().order_u64(), Some(2));
    assert!(edge_kernel(&k33, 0, 1).is_err());
}

#[test]
fn trivial_kernel_paths() {
    let cat = load_catalog().unwrap();
    let rows = golden::examples().rows;
    let k925 = complete_bipartite_example(&rows[0], cat).unwrap().graph;
    let path = find_trivial_kernel_path(&k925, 0).unwrap();
    assert!(path.len() <= 2);
    assert!(path_kernel(&k925, &path).unwrap().is_trivial());
    let k33 = product_k33();
    let path = find_trivial_kernel_path(&k33, 0).unwrap();
    assert_eq!(path.len(), 2);
}
