use pmpoly::ehrhart::{count_lattice_points, lattice_points};
use pmpoly::graph::{self, Graph, NeighborGraph, SubsetSpec};
use pmpoly::matching::{self, EdgeVector};
use pmpoly::polytope::{self, ConvexHullOracle, InequalityKind, Region, ScalableHRep, Sense};
use pmpoly::rational::q;
use pmpoly::Budget;

fn perfect_vertices(g: &Graph) -> Vec<EdgeVector> {
    matching::characteristic_vectors(&matching::enumerate_perfect_matchings(g), g.n_edges())
}

fn s_vertices(ng: &NeighborGraph) -> Vec<EdgeVector> {
    matching::characteristic_vectors(&matching::enumerate_s_matchings(ng), ng.n_slots())
}

/// Calls `f` on every point of `[0, t]^len`.
fn for_box(len: usize, t: i64, mut f: impl FnMut(&EdgeVector)) {
    let mut x = EdgeVector::zeros(len);
    loop {
        f(&x);
        let Some(k) = x.0.iter().position(|&v| v < t) else {
            return;
        };
        x.0[k] += 1;
        for v in &mut x.0[..k] {
            *v = 0;
        }
    }
}

fn small_graphs() -> Vec<Graph> {
    vec![
        Graph::grid(2, 2).unwrap(),
        Graph::grid(2, 3).unwrap(),
        Graph::grid(2, 4).unwrap(),
        Graph::grid(3, 2).unwrap(),
        Graph::torus(2, 3).unwrap(),
        Graph::torus(1, 6).unwrap(),
        Graph::torus(1, 4).unwrap(),
        // Two triangles joined by an edge, and K4.
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap(),
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        // Triangular prism.
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap(),
    ]
}

#[test]
fn edmond_description_matches_convex_hull_on_small_boxes() {
    for g in small_graphs() {
        let h = polytope::edmond_hrep(&g).unwrap();
        let oracle = ConvexHullOracle::new(&perfect_vertices(&g)).unwrap();
        for t in 1..=3 {
            let mut inside = 0u64;
            for_box(g.n_edges(), t, |x| {
                let a = h.contains(x, t, Region::Closed).unwrap();
                assert_eq!(a, oracle.contains(x, t).unwrap(), "{:?} at t = {t}", x.entries());
                inside += a as u64;
            });
            // The counting engine agrees with the box scan.
            assert_eq!(count_lattice_points(&h, t, Region::Closed, &Budget::unlimited()).unwrap(), inside);
        }
    }
}

#[test]
fn interior_counts_match_box_scan() {
    for g in small_graphs() {
        let h = polytope::edmond_hrep(&g).unwrap();
        for t in 1..=4 {
            let mut inside = 0u64;
            for_box(g.n_edges(), t, |x| {
                if h.contains(x, t, Region::RelativeInterior).unwrap() {
                    assert!(h.contains(x, t, Region::Closed).unwrap());
                    inside += 1;
                }
            });
            let counted = count_lattice_points(&h, t, Region::RelativeInterior, &Budget::unlimited()).unwrap();
            assert_eq!(counted, inside, "t = {t}");
        }
    }
}

/// Every integer point off the vertex equalities is rejected by both tests,
/// so comparing on the equality slice covers the whole box.
#[test]
fn torus25_edmond_matches_convex_hull_on_the_equality_slice() {
    let g = Graph::torus(2, 5).unwrap();
    let h = polytope::edmond_hrep(&g).unwrap();
    let oracle = ConvexHullOracle::new(&perfect_vertices(&g)).unwrap();
    let relaxed = h.without_cut_rows();
    for t in 1..=3 {
        let slice = lattice_points(&relaxed, t, Region::Closed, &Budget::unlimited()).unwrap();
        let mut inside = 0;
        for x in &slice {
            let a = h.contains(x, t, Region::Closed).unwrap();
            assert_eq!(a, oracle.contains(x, t).unwrap(), "{:?} at t = {t}", x.entries());
            inside += a as u64;
        }
        assert_eq!(count_lattice_points(&h, t, Region::Closed, &Budget::unlimited()).unwrap(), inside);
    }
    // A point with wrong vertex sums is rejected by both.
    let x = EdgeVector::ones(15);
    assert!(!h.contains(&x, 2, Region::Closed).unwrap());
    assert!(!oracle.contains(&x, 2).unwrap());
}

#[test]
fn odd_cut_rows_are_redundant_for_bipartite_graphs() {
    for g in [Graph::grid(2, 3).unwrap(), Graph::grid(2, 4).unwrap(), Graph::torus(2, 4).unwrap()] {
        assert!(graph::is_bipartite(&g).is_some());
        let h = polytope::edmond_hrep(&g).unwrap();
        let relaxed = h.without_cut_rows();
        for t in 1..=3 {
            for region in [Region::Closed, Region::RelativeInterior] {
                let a = lattice_points(&h, t, region, &Budget::unlimited()).unwrap();
                let b = lattice_points(&relaxed, t, region, &Budget::unlimited()).unwrap();
                assert_eq!(a, b);
            }
        }
    }
    // Not so for an odd cycle: torus(2,3) gains the all-ones point at t = 3.
    let g = Graph::torus(2, 3).unwrap();
    let h = polytope::edmond_hrep(&g).unwrap();
    assert!(!h.contains(&EdgeVector::ones(9), 3, Region::RelativeInterior).unwrap());
    assert!(h.without_cut_rows().contains(&EdgeVector::ones(9), 3, Region::RelativeInterior).unwrap());
}

fn bipartite_corpus() -> Vec<(Graph, SubsetSpec)> {
    pmpoly::paperlab::theorem_main_corpus().unwrap()
}

#[test]
fn smatching_description_matches_convex_hull() {
    for (g, s) in bipartite_corpus() {
        let ng = NeighborGraph::new(&g, &s).unwrap();
        let h = polytope::smatching_hrep(&ng).unwrap();
        assert_eq!(h.n_cut_rows(), 0);
        let oracle = ConvexHullOracle::new(&s_vertices(&ng)).unwrap();
        for t in 1..=2 {
            for_box(ng.n_slots(), t, |x| {
                assert_eq!(h.contains(x, t, Region::Closed).unwrap(), oracle.contains(x, t).unwrap());
            });
        }
    }
}

#[test]
fn cut_lower_bound_for_odd_bipartite_sets() {
    let mut checked = 0;
    for (g, s) in bipartite_corpus() {
        if s.len() % 2 == 0 {
            continue;
        }
        let ng = NeighborGraph::new(&g, &s).unwrap();
        let h = polytope::smatching_hrep(&ng).unwrap();
        let bridges: Vec<usize> = ng.bridges().collect();
        for t in 1..=3 {
            for x in lattice_points(&h, t, Region::Closed, &Budget::unlimited()).unwrap() {
                assert!(x.sum_over(&bridges) >= t);
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn implicit_equality_flags_match_vertices() {
    for g in small_graphs() {
        let vs = perfect_vertices(&g);
        let h = polytope::edmond_hrep(&g).unwrap();
        for row in h.inequalities() {
            let tight = vs.iter().all(|v| v.sum_over(&row.support) == row.rhs_mult);
            assert_eq!(row.implicit_eq, tight);
        }
    }
}

#[test]
fn interior_rejects_points_breaking_an_implicit_equality() {
    // grid(2,3): the middle rung is 0 in two of the three perfect matchings,
    // but the first and last rungs are not tight everywhere; the flags only
    // fire where every vertex agrees.
    let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
    let h = polytope::edmond_hrep(&g).unwrap();
    let flagged: Vec<usize> = h
        .inequalities()
        .iter()
        .filter(|r| r.implicit_eq)
        .filter_map(|r| match r.kind {
            InequalityKind::Nonnegativity { edge } => Some(edge),
            _ => None,
        })
        .collect();
    // The bridge (2,3) is in every perfect matching; the triangle edges at
    // 2 and 3 are in none.
    let bridge = g.edge_index(2, 3).unwrap();
    assert!(!flagged.contains(&bridge));
    assert!(flagged.contains(&g.edge_index(0, 2).unwrap()));
    let mut x = EdgeVector::zeros(g.n_edges());
    x.0[g.edge_index(0, 1).unwrap()] = 2;
    x.0[g.edge_index(4, 5).unwrap()] = 2;
    x.0[bridge] = 2;
    assert!(h.contains(&x, 2, Region::RelativeInterior).unwrap());
    x.0[g.edge_index(0, 2).unwrap()] = 1;
    assert!(!h.contains(&x, 2, Region::Closed).unwrap());
    assert!(!h.contains(&x, 2, Region::RelativeInterior).unwrap());
}

fn dot(c: &[i64], x: &EdgeVector) -> i64 {
    c.iter().zip(x.entries()).map(|(a, b)| a * b).sum()
}

#[test]
fn lp_optimum_is_the_best_vertex() {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 11) as i64 - 5
    };
    let check = |h: &ScalableHRep, vs: &[EdgeVector], next: &mut dyn FnMut() -> i64| {
        for _ in 0..10 {
            let c: Vec<i64> = (0..h.ambient_edges()).map(|_| next()).collect();
            let cost: Vec<_> = c.iter().map(|&x| q(x)).collect();
            let max = vs.iter().map(|v| dot(&c, v)).max().unwrap();
            let min = vs.iter().map(|v| dot(&c, v)).min().unwrap();
            assert_eq!(polytope::lp_optimize(h, 1, &cost, Sense::Max).unwrap().value, q(max));
            assert_eq!(polytope::lp_optimize(h, 1, &cost, Sense::Min).unwrap().value, q(min));
            assert_eq!(polytope::lp_optimize(h, 3, &cost, Sense::Max).unwrap().value, q(3 * max));
        }
    };
    for g in small_graphs() {
        check(&polytope::edmond_hrep(&g).unwrap(), &perfect_vertices(&g), &mut next);
    }
    for (g, s) in bipartite_corpus() {
        let ng = NeighborGraph::new(&g, &s).unwrap();
        check(&polytope::smatching_hrep(&ng).unwrap(), &s_vertices(&ng), &mut next);
    }
}

#[test]
fn dimension_formula_agrees_with_vertices() {
    let mut cases: Vec<(Graph, SubsetSpec)> = bipartite_corpus();
    for (m, n) in [(3, 3), (3, 4), (4, 4), (4, 5), (5, 5)] {
        let g = Graph::grid(m, n).unwrap();
        let s = SubsetSpec::lattice_interior(&g).unwrap();
        cases.push((g, s));
    }
    let mut compared = 0;
    for (g, s) in cases {
        let ng = NeighborGraph::new(&g, &s).unwrap();
        let from_vertices = polytope::dimension_from_vertices(&s_vertices(&ng)).unwrap();
        match polytope::dimension_formula(&ng) {
            Ok(d) => {
                assert_eq!(d, from_vertices);
                compared += 1;
            }
            Err(pmpoly::Error::HypothesisFailed(_)) => {
                assert_eq!(polytope::dimension_formula_components(&ng).unwrap(), from_vertices);
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(compared >= 10);
}

#[test]
fn hrep_json_is_dense() {
    let g = Graph::grid(2, 2).unwrap();
    let doc = polytope::edmond_hrep(&g).unwrap().to_json();
    let v = serde_json::to_value(&doc).unwrap();
    assert_eq!(v["equalities"][0]["coeffs"], serde_json::json!([1, 1, 0, 0]));
    assert_eq!(v["equalities"][0]["rhs_mult"], 1);
    assert_eq!(v["inequalities"][0]["kind"], "nonnegativity");
    assert_eq!(v["inequalities"][0]["implicit_eq"], false);
}
