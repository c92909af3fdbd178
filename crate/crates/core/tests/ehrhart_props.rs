use std::collections::BTreeMap;

use pmpoly::ehrhart::{self, count_lattice_points, lattice_points, EhrhartProfile};
use pmpoly::graph::{Graph, NeighborGraph, SubsetSpec};
use pmpoly::matching::{self, EdgeVector};
use pmpoly::polytope::{self, Region, ScalableHRep};
use pmpoly::rational::{eval_poly, q};
use pmpoly::Budget;
use proptest::prelude::*;

fn torus(m: usize, n: usize) -> (ScalableHRep, Vec<EdgeVector>) {
    let g = Graph::torus(m, n).unwrap();
    let vs = matching::characteristic_vectors(&matching::enumerate_perfect_matchings(&g), g.n_edges());
    (polytope::edmond_hrep(&g).unwrap(), vs)
}

fn smatching(g: Graph, coords: &[(usize, usize)]) -> (ScalableHRep, Vec<EdgeVector>) {
    let s = SubsetSpec::from_coords(&g, coords).unwrap();
    let ng = NeighborGraph::new(&g, &s).unwrap();
    let vs = matching::characteristic_vectors(&matching::enumerate_s_matchings(&ng), ng.n_slots());
    (polytope::smatching_hrep(&ng).unwrap(), vs)
}

fn named(name: &'static str, (h, vs): (ScalableHRep, Vec<EdgeVector>)) -> (&'static str, ScalableHRep, Vec<EdgeVector>) {
    (name, h, vs)
}

fn corpus() -> Vec<(&'static str, ScalableHRep, Vec<EdgeVector>)> {
    vec![
        named("torus(2,3)", torus(2, 3)),
        named("torus(2,4)", torus(2, 4)),
        named("torus(2,5)", torus(2, 5)),
        named("torus(1,4)", torus(1, 4)),
        named("torus(1,6)", torus(1, 6)),
        named("grid(3,3) center", smatching(Graph::grid(3, 3).unwrap(), &[(1, 1)])),
        named("grid(3,3) corner pair", smatching(Graph::grid(3, 3).unwrap(), &[(0, 0), (0, 1)])),
        named("grid(3,4) pair", smatching(Graph::grid(3, 4).unwrap(), &[(1, 1), (1, 2)])),
        named("torus(2,3) column", smatching(Graph::torus(2, 3).unwrap(), &[(0, 0), (1, 0)])),
    ]
}

fn profiles() -> Vec<(&'static str, ScalableHRep, EhrhartProfile)> {
    corpus()
        .into_iter()
        .map(|(name, h, vs)| {
            let p = ehrhart::profile(&h, &vs, &Budget::unlimited()).unwrap();
            (name, h, p)
        })
        .collect()
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn profile_invariants() {
    for (name, h, mut p) in profiles() {
        assert_eq!(p.h_star[0], 1, "{name}");
        assert!(p.h_star.iter().all(|&c| c >= 0), "{name}");
        assert_eq!(p.degree + p.codegree, p.dim + 1, "{name}");
        assert_eq!(p.interior_counts[&(p.codegree as u32)], p.h_star[p.degree] as u64, "{name}");
        for (&t, &c) in &p.counts {
            assert_eq!(p.eval(t as i64), q(c as i64), "{name}");
        }
        // Counts beyond the interpolation range stay on the polynomial.
        let t = p.dim as i64 + 1;
        let c = count_lattice_points(&h, t, Region::Closed, &Budget::unlimited()).unwrap();
        assert_eq!(p.eval(t), q(c as i64), "{name}");
        // Leading coefficient times d! is the normalized volume, the h*-sum.
        let d = p.dim as i64;
        let factorial: i64 = (1..=d).product();
        assert_eq!(&p.poly[p.dim] * q(factorial), q(p.h_star.iter().sum()), "{name}");
        p.extend_interior(&h, p.codegree as u32 + 2, &Budget::unlimited()).unwrap();
        assert!(ehrhart::reciprocity_check(&p), "{name}");
        let shift = ehrhart::gorenstein_shift_check(&h, &p, (p.codegree + p.dim) as u32, &Budget::unlimited()).unwrap();
        assert_eq!(shift, p.gorenstein, "{name}");
        assert_eq!(p.gorenstein, ehrhart::is_palindrome(&p.h_star), "{name}");
    }
}

#[test]
fn known_profiles() {
    let by_name: BTreeMap<_, _> = profiles().into_iter().map(|(n, _, p)| (n, p)).collect();
    let p = &by_name["torus(2,3)"];
    assert_eq!((p.dim, p.codegree, p.h_star.clone()), (3, 4, vec![1]));
    for t in 0..=3 {
        assert_eq!(p.counts[&t] as i64, binomial(t as i64 + 3, 3));
    }
    let p = &by_name["torus(2,5)"];
    assert_eq!((p.dim, p.codegree, p.h_star.clone(), p.gorenstein), (5, 3, vec![1, 5, 5, 1], true));
    let p = &by_name["torus(2,4)"];
    assert_eq!((p.dim, p.h_star.clone()), (5, vec![1, 3, 3, 1]));
    let p = &by_name["grid(3,3) center"];
    // Four matchings of the center vertex: a unimodular 3-simplex.
    assert_eq!((p.dim, p.codegree, p.h_star.clone()), (3, 4, vec![1]));
}

#[test]
fn counts_are_monotone_in_t() {
    for (name, h, _) in corpus() {
        let mut last = 0;
        for t in 0..=4 {
            let c = count_lattice_points(&h, t, Region::Closed, &Budget::unlimited()).unwrap();
            assert!(c >= last, "{name} at t = {t}");
            last = c;
        }
    }
}

/// Adding the all-ones vector sends lP into (l+k)P° when the all-ones
/// vector lies strictly inside kP; checked point by point.
#[test]
fn shift_by_ones_lands_in_the_interior() {
    let g = Graph::torus(2, 5).unwrap();
    let h = polytope::edmond_hrep(&g).unwrap();
    let ones = EdgeVector::ones(g.n_edges());
    let k = 3;
    assert!(h.contains(&ones, k, Region::RelativeInterior).unwrap());
    for l in 1..=2 {
        let points = lattice_points(&h, l, Region::Closed, &Budget::unlimited()).unwrap();
        for x in &points {
            assert!(h.contains(&x.shifted(1), l + k, Region::RelativeInterior).unwrap());
        }
        let target = count_lattice_points(&h, l + k, Region::RelativeInterior, &Budget::unlimited()).unwrap();
        assert!(points.len() as u64 <= target);
    }
}

#[test]
fn interior_points_are_inside_the_closed_dilate() {
    for (name, h, _) in corpus() {
        for t in 1..=4 {
            for x in lattice_points(&h, t, Region::RelativeInterior, &Budget::unlimited()).unwrap() {
                assert!(h.contains(&x, t, Region::Closed).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn empty_polytope_is_reported() {
    let g = Graph::torus(3, 3).unwrap();
    let h = polytope::edmond_hrep(&g).unwrap();
    assert!(h.is_empty());
    assert_eq!(count_lattice_points(&h, 0, Region::Closed, &Budget::unlimited()).unwrap(), 0);
    assert!(matches!(ehrhart::profile(&h, &[], &Budget::unlimited()), Err(pmpoly::Error::EmptyPolytope)));
}

#[test]
fn node_budget_trips() {
    let (h, vs) = torus(2, 6);
    let tight = Budget::unlimited().with_max_nodes(10);
    assert!(matches!(ehrhart::profile(&h, &vs, &tight), Err(pmpoly::Error::BudgetExhausted { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interpolation_recovers_integer_valued_polynomials(
        coeffs in proptest::collection::vec(0i64..6, 1..7),
    ) {
        // Nonnegative combinations of C(t + d - i, d) have nonnegative values.
        let d = coeffs.len() - 1;
        let value = |t: i64| -> i64 {
            coeffs.iter().enumerate().map(|(i, &c)| c * binomial(t + (d - i) as i64, d as i64)).sum()
        };
        let counts: BTreeMap<u32, u64> = (0..=d as u32 + 2).map(|t| (t, value(t as i64) as u64)).collect();
        let poly = ehrhart::interpolate(&counts, d).unwrap();
        prop_assert!(poly.len() == d + 1);
        for t in 0..=(d as i64 + 4) {
            prop_assert_eq!(eval_poly(&poly, &q(t)), q(value(t)));
        }
        // Those are exactly the h*-vectors, up to trailing zeros.
        let mut expected = coeffs.clone();
        while expected.len() > 1 && expected.last() == Some(&0) {
            expected.pop();
        }
        if coeffs[0] == 1 {
            prop_assert_eq!(ehrhart::h_star(&counts, d).unwrap(), expected);
        }
    }

    #[test]
    fn palindromes_read_the_same_backwards(h in proptest::collection::vec(0i64..4, 0..8)) {
        let mut v = h.clone();
        v.extend(h.iter().rev());
        prop_assert!(ehrhart::is_palindrome(&v));
        v.push(1);
        v.insert(0, 2);
        prop_assert!(!ehrhart::is_palindrome(&v));
    }
}
