//! Dilation-scalable H-descriptions of matching polytopes, membership tests
//! for `tP` and its relative interior, an exact LP oracle, and dimensions.

pub mod linalg;
pub mod lp;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{self, Graph, NeighborGraph, SubsetSpec};
use crate::matching::{self, EdgeVector};
use crate::rational::{self, Q};

/// Default largest `|V|` for which odd-cut rows are generated.
pub const DEFAULT_CUT_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InequalityKind {
    Nonnegativity { edge: usize },
    OddCut { subset: SubsetSpec },
}

/// `Σ_{e ∈ support} x_e = rhs_mult · t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityRow {
    pub support: Vec<usize>,
    pub rhs_mult: i64,
}

/// `Σ_{e ∈ support} x_e >= rhs_mult · t`. Every row in this crate has 0/1
/// coefficients, so a row is stored as the support of its indicator vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityRow {
    pub support: Vec<usize>,
    pub rhs_mult: i64,
    pub kind: InequalityKind,
    /// Tight at every vertex of the polytope.
    pub implicit_eq: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalableHRep {
    ambient_edges: usize,
    equalities: Vec<EqualityRow>,
    inequalities: Vec<InequalityRow>,
    empty: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Closed,
    RelativeInterior,
}

impl ScalableHRep {
    pub fn ambient_edges(&self) -> usize {
        self.ambient_edges
    }

    pub fn equalities(&self) -> &[EqualityRow] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[InequalityRow] {
        &self.inequalities
    }

    /// True when the polytope has no vertices.
    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn n_cut_rows(&self) -> usize {
        self.inequalities
            .iter()
            .filter(|r| matches!(r.kind, InequalityKind::OddCut { .. }))
            .count()
    }

    /// The same description with every odd-cut row removed.
    pub fn without_cut_rows(&self) -> Self {
        let mut h = self.clone();
        h.inequalities
            .retain(|r| matches!(r.kind, InequalityKind::Nonnegativity { .. }));
        h
    }

    /// Recomputes the implicit-equality flags from an explicit vertex list.
    pub fn flag_implicit_equalities(&mut self, vertices: &[EdgeVector]) {
        let sets: Vec<BitSet> = vertices
            .iter()
            .map(|v| {
                BitSet::from_indices(
                    self.ambient_edges,
                    v.entries().iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, _)| k),
                )
            })
            .collect();
        let all_01 = vertices.iter().all(|v| v.entries().iter().all(|&x| x == 0 || x == 1));
        for row in &mut self.inequalities {
            row.implicit_eq = if all_01 {
                let mask = BitSet::from_indices(self.ambient_edges, row.support.iter().copied());
                sets.iter()
                    .all(|s| i64::from(s.count_and(&mask)) == row.rhs_mult)
            } else {
                vertices.iter().all(|v| v.sum_over(&row.support) == row.rhs_mult)
            };
        }
        self.empty = vertices.is_empty();
    }

    fn check_len(&self, x: &EdgeVector) -> Result<()> {
        if x.len() != self.ambient_edges {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_edges,
                got: x.len(),
            });
        }
        Ok(())
    }

    fn equalities_hold(&self, x: &EdgeVector, t: i64) -> bool {
        self.equalities
            .iter()
            .all(|r| x.sum_over(&r.support) == r.rhs_mult * t)
    }

    /// Membership of `x` in `tP` or in `tP°`.
    ///
    /// For the relative interior, equalities and implicit-equality rows must
    /// hold with equality and every other inequality must hold strictly.
    pub fn contains(&self, x: &EdgeVector, t: i64, region: Region) -> Result<bool> {
        self.check_len(x)?;
        if self.empty || !self.equalities_hold(x, t) {
            return Ok(false);
        }
        Ok(self.inequalities.iter().all(|r| {
            let lhs = x.sum_over(&r.support);
            let rhs = r.rhs_mult * t;
            match region {
                Region::Closed => lhs >= rhs,
                Region::RelativeInterior if r.implicit_eq => lhs == rhs,
                Region::RelativeInterior => lhs > rhs,
            }
        }))
    }

    /// Equalities hold and every inequality holds strictly, flags ignored.
    pub fn satisfies_strict(&self, x: &EdgeVector, t: i64) -> Result<bool> {
        self.check_len(x)?;
        Ok(self.equalities_hold(x, t)
            && self
                .inequalities
                .iter()
                .all(|r| x.sum_over(&r.support) > r.rhs_mult * t))
    }

    pub fn to_json(&self) -> HRepJson {
        let dense = |support: &[usize]| {
            let mut c = vec![0i64; self.ambient_edges];
            for &k in support {
                c[k] = 1;
            }
            c
        };
        HRepJson {
            ambient_edges: self.ambient_edges,
            empty: self.empty,
            equalities: self
                .equalities
                .iter()
                .map(|r| EqualityJson {
                    coeffs: dense(&r.support),
                    rhs_mult: r.rhs_mult,
                })
                .collect(),
            inequalities: self
                .inequalities
                .iter()
                .map(|r| InequalityJson {
                    coeffs: dense(&r.support),
                    rhs_mult: r.rhs_mult,
                    kind: r.kind.clone(),
                    implicit_eq: r.implicit_eq,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityJson {
    pub coeffs: Vec<i64>,
    pub rhs_mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityJson {
    pub coeffs: Vec<i64>,
    pub rhs_mult: i64,
    #[serde(flatten)]
    pub kind: InequalityKind,
    pub implicit_eq: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRepJson {
    pub ambient_edges: usize,
    pub empty: bool,
    pub equalities: Vec<EqualityJson>,
    pub inequalities: Vec<InequalityJson>,
}

fn nonnegativity_rows(n_edges: usize) -> Vec<InequalityRow> {
    (0..n_edges)
        .map(|k| InequalityRow {
            support: vec![k],
            rhs_mult: 0,
            kind: InequalityKind::Nonnegativity { edge: k },
            implicit_eq: false,
        })
        .collect()
}

/// Nonnegativity, vertex-incidence equalities and odd-cut rows of the
/// perfect matching polytope, with the default cut cap.
pub fn edmond_hrep(g: &Graph) -> Result<ScalableHRep> {
    edmond_hrep_with_cap(g, DEFAULT_CUT_CAP)
}

pub fn edmond_hrep_with_cap(g: &Graph, cut_cap: usize) -> Result<ScalableHRep> {
    let vertices = matching::characteristic_vectors(
        &matching::enumerate_perfect_matchings(g),
        g.n_edges(),
    );
    edmond_hrep_for(g, &vertices, cut_cap)
}

/// As [`edmond_hrep_with_cap`], with the perfect-matching vectors supplied.
///
/// Odd-cut rows are generated for `3 <= |S| <= |V| - 3`, deduplicated by cut
/// edge set. An odd `|V|` yields an empty-polytope marker with no cut rows.
pub fn edmond_hrep_for(g: &Graph, vertices: &[EdgeVector], cut_cap: usize) -> Result<ScalableHRep> {
    let n = g.n_vertices();
    let equalities = (0..n)
        .map(|v| EqualityRow {
            support: g.incident(v).to_vec(),
            rhs_mult: 1,
        })
        .collect();
    let mut inequalities = nonnegativity_rows(g.n_edges());
    if n.is_multiple_of(2) {
        if n > cut_cap {
            return Err(Error::CapExceeded {
                what: "odd-cut enumeration",
                n_vertices: n,
                cap: cut_cap,
            });
        }
        inequalities.extend(odd_cut_rows(g));
    }
    let mut h = ScalableHRep {
        ambient_edges: g.n_edges(),
        equalities,
        inequalities,
        empty: true,
    };
    h.flag_implicit_equalities(vertices);
    if n % 2 == 1 {
        h.empty = true;
    }
    Ok(h)
}

fn odd_cut_rows(g: &Graph) -> Vec<InequalityRow> {
    let n = g.n_vertices();
    debug_assert!(n < 64);
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut rows = Vec::new();
    let mut k = 3;
    while k + 3 <= n {
        // Gosper's hack: all k-subsets of n bits in increasing mask order.
        let mut mask: u64 = (1u64 << k) - 1;
        let limit = 1u64 << n;
        while mask < limit {
            let support: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(u, v))| (mask >> u ^ mask >> v) & 1 == 1)
                .map(|(e, _)| e)
                .collect();
            let key = BitSet::from_indices(g.n_edges(), support.iter().copied());
            if seen.insert(key) {
                rows.push(InequalityRow {
                    support,
                    rhs_mult: 1,
                    kind: InequalityKind::OddCut {
                        subset: SubsetSpec::from_mask(mask),
                    },
                    implicit_eq: false,
                });
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
        k += 2;
    }
    rows
}

/// Nonnegativity on `E_S` and one equality per S-vertex; valid when `⟨S⟩`
/// is bipartite, which is checked.
pub fn smatching_hrep(ng: &NeighborGraph) -> Result<ScalableHRep> {
    let vertices = matching::characteristic_vectors(&matching::enumerate_s_matchings(ng), ng.n_slots());
    smatching_hrep_for(ng, &vertices)
}

pub fn smatching_hrep_for(ng: &NeighborGraph, vertices: &[EdgeVector]) -> Result<ScalableHRep> {
    let induced = graph::induced_subgraph(ng.base(), ng.s())?;
    if graph::is_bipartite(&induced.graph).is_none() {
        return Err(Error::NotBipartite);
    }
    let equalities = ng
        .s()
        .members()
        .iter()
        .map(|&v| EqualityRow {
            support: ng.slot_incident(v).to_vec(),
            rhs_mult: 1,
        })
        .collect();
    let mut h = ScalableHRep {
        ambient_edges: ng.n_slots(),
        equalities,
        inequalities: nonnegativity_rows(ng.n_slots()),
        empty: true,
    };
    h.flag_implicit_equalities(vertices);
    Ok(h)
}

/// The solution space `W` of the homogeneous equalities, and a rational
/// point of the polytope.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineHull {
    pub dimension: usize,
    pub basis: Vec<Vec<Q>>,
    pub base_point: Option<Vec<Q>>,
}

pub fn affine_hull(h: &ScalableHRep, vertices: &[EdgeVector]) -> AffineHull {
    let n = h.ambient_edges;
    let rows: Vec<Vec<Q>> = h
        .equalities
        .iter()
        .map(|r| {
            let mut row = vec![Q::zero(); n];
            for &k in &r.support {
                row[k] = Q::one();
            }
            row
        })
        .collect();
    let basis = linalg::nullspace(&rows, n);
    let base_point = (!vertices.is_empty()).then(|| {
        let count = Q::from_integer(BigInt::from(vertices.len()));
        (0..n)
            .map(|k| {
                let s: i64 = vertices.iter().map(|v| v.entries()[k]).sum();
                rational::q(s) / &count
            })
            .collect()
    });
    AffineHull {
        dimension: basis.len(),
        basis,
        base_point,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Q,
    pub argument: Vec<Q>,
}

/// Exact optimum of `cost·x` over `tP` described by `h`.
///
/// Variables are the edge values (the nonnegativity rows become variable
/// bounds); each odd-cut row gets a surplus column.
pub fn lp_optimize(h: &ScalableHRep, t: i64, cost: &[Q], sense: Sense) -> Result<LpSolution> {
    let n = h.ambient_edges;
    if cost.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: cost.len(),
        });
    }
    let cuts: Vec<&InequalityRow> = h
        .inequalities
        .iter()
        .filter(|r| !matches!(r.kind, InequalityKind::Nonnegativity { .. }))
        .collect();
    let width = n + cuts.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for r in &h.equalities {
        let mut row = vec![Q::zero(); width];
        for &k in &r.support {
            row[k] = Q::one();
        }
        a.push(row);
        b.push(rational::q(r.rhs_mult * t));
    }
    for (i, r) in cuts.iter().enumerate() {
        let mut row = vec![Q::zero(); width];
        for &k in &r.support {
            row[k] = Q::one();
        }
        row[n + i] = -Q::one();
        a.push(row);
        b.push(rational::q(r.rhs_mult * t));
    }
    let sign = match sense {
        Sense::Max => Q::one(),
        Sense::Min => -Q::one(),
    };
    let mut c: Vec<Q> = cost.iter().map(|x| x * &sign).collect();
    c.resize(width, Q::zero());
    let out = lp::maximize(&lp::StandardLp { a, b, c })?;
    Ok(LpSolution {
        value: out.value * sign,
        argument: out.x[..n].to_vec(),
    })
}

/// Membership in `t · conv(vertices)`, independent of any H-description.
///
/// Points off the affine hull of the vertices are rejected by integer
/// equations derived from the vertices alone; the rest go to an exact LP on
/// the convex-combination system.
#[derive(Debug, Clone)]
pub struct ConvexHullOracle {
    vertices: Vec<EdgeVector>,
    /// `(a, b)` with `a·v = b` for every vertex `v`.
    hull_equations: Vec<(Vec<BigInt>, BigInt)>,
}

impl ConvexHullOracle {
    pub fn new(vertices: &[EdgeVector]) -> Result<Self> {
        let first = vertices.first().ok_or(Error::NoVertices)?;
        let n = first.len();
        if let Some(v) = vertices.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let rows: Vec<Vec<Q>> = vertices
            .iter()
            .map(|v| {
                let mut r: Vec<Q> = v.entries().iter().map(|&x| rational::q(x)).collect();
                r.push(-Q::one());
                r
            })
            .collect();
        let hull_equations = linalg::nullspace(&rows, n + 1)
            .iter()
            .map(|sol| {
                let mut int = linalg::primitive_integer(sol);
                let b = int.pop().unwrap();
                (int, b)
            })
            .collect();
        Ok(Self {
            vertices: vertices.to_vec(),
            hull_equations,
        })
    }

    pub fn contains(&self, x: &EdgeVector, t: i64) -> Result<bool> {
        let n = self.vertices[0].len();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let tt = BigInt::from(t);
        for (a, b) in &self.hull_equations {
            let lhs: BigInt = a.iter().zip(x.entries()).map(|(ai, &xi)| ai * xi).sum();
            if lhs != b * &tt {
                return Ok(false);
            }
        }
        if x.entries().iter().any(|&v| v < 0) {
            return Ok(false);
        }
        // Σ λ_M χ_M = x, Σ λ_M = t, λ >= 0.
        let k = self.vertices.len();
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|e| self.vertices.iter().map(|v| rational::q(v.entries()[e])).collect())
            .collect();
        let mut b: Vec<Q> = x.entries().iter().map(|&v| rational::q(v)).collect();
        a.push(vec![Q::one(); k]);
        b.push(rational::q(t));
        lp::is_feasible(&lp::StandardLp {
            a,
            b,
            c: vec![Q::zero(); k],
        })
    }
}

pub fn member_convex(vertices: &[EdgeVector], x: &EdgeVector, t: i64) -> Result<bool> {
    ConvexHullOracle::new(vertices)?.contains(x, t)
}

/// Affine dimension of the vertex set, as the rank of `{v_i - v_0}`.
pub fn dimension_from_vertices(vertices: &[EdgeVector]) -> Result<usize> {
    let v0 = vertices.first().ok_or(Error::NoVertices)?;
    let diffs: Vec<Vec<i64>> = vertices[1..]
        .iter()
        .map(|v| v.entries().iter().zip(v0.entries()).map(|(a, b)| a - b).collect())
        .collect();
    Ok(linalg::integer_rank(&diffs))
}

/// `|E_S| - |S|` when `Γ(S)` is nonempty, `|E_S| - |S| + 1` otherwise.
///
/// Requires `⟨S⟩` connected and bipartite and every `E_S` edge to lie in
/// some S-matching; each hypothesis is checked.
pub fn dimension_formula(ng: &NeighborGraph) -> Result<usize> {
    let induced = graph::induced_subgraph(ng.base(), ng.s())?;
    if graph::components(&induced.graph).len() != 1 {
        return Err(Error::HypothesisFailed("⟨S⟩ is not connected".into()));
    }
    if graph::is_bipartite(&induced.graph).is_none() {
        return Err(Error::HypothesisFailed("⟨S⟩ is not bipartite".into()));
    }
    let mut used = vec![false; ng.n_slots()];
    for m in matching::enumerate_s_matchings(ng) {
        for k in m.edge_ids {
            used[k] = true;
        }
    }
    if let Some(k) = used.iter().position(|u| !u) {
        let (a, b) = ng.slots()[k].endpoints;
        return Err(Error::HypothesisFailed(format!(
            "edge ({a},{b}) lies in no S-matching"
        )));
    }
    let base = ng.n_slots() - ng.s().len();
    Ok(if ng.gamma().is_empty() { base + 1 } else { base })
}

/// Sum of [`dimension_formula`] over the connected components of `⟨S⟩`
/// (the S-matching polytope is the product of the component polytopes).
pub fn dimension_formula_components(ng: &NeighborGraph) -> Result<usize> {
    let induced = graph::induced_subgraph(ng.base(), ng.s())?;
    graph::components(&induced.graph)
        .into_iter()
        .map(|comp| {
            let members = comp.iter().map(|&v| induced.vertex_map[v]).collect();
            let s = SubsetSpec::new(members, ng.base().n_vertices())?;
            dimension_formula(&NeighborGraph::new(ng.base(), &s)?)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn fig1_vector(g: &Graph) -> EdgeVector {
        EdgeVector(
            (0..g.n_edges())
                .map(|k| if g.is_horizontal(k) { 1 } else { 2 })
                .collect(),
        )
    }

    #[test]
    fn edmond_row_counts() {
        let g = Graph::grid(2, 2).unwrap();
        let h = edmond_hrep(&g).unwrap();
        assert_eq!(h.equalities().len(), 4);
        assert_eq!(h.inequalities().len(), 4);
        assert_eq!(h.n_cut_rows(), 0);

        // 120 + 252 + 120 subsets; S and S' give the same row.
        let g = Graph::torus(2, 5).unwrap();
        let h = edmond_hrep(&g).unwrap();
        assert_eq!(h.equalities().len(), 10);
        assert_eq!(h.inequalities().len() - h.n_cut_rows(), 15);
        assert!(h.n_cut_rows() <= 246);
        for r in h.inequalities() {
            if let InequalityKind::OddCut { subset } = &r.kind {
                assert_eq!(subset.len() % 2, 1);
                assert_eq!(r.support, graph::cut(&g, subset));
            }
        }
    }

    #[test]
    fn odd_vertex_count_is_empty() {
        let g = Graph::grid(3, 3).unwrap();
        let h = edmond_hrep(&g).unwrap();
        assert!(h.is_empty());
        assert!(!h.contains(&EdgeVector::zeros(12), 0, Region::Closed).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::torus(4, 5).unwrap();
        assert!(matches!(edmond_hrep(&g), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn witness_memberships() {
        let g = Graph::torus(2, 3).unwrap();
        let h = edmond_hrep(&g).unwrap();
        assert!(h.contains(&fig1_vector(&g), 4, Region::RelativeInterior).unwrap());

        let g = Graph::torus(2, 5).unwrap();
        let h = edmond_hrep(&g).unwrap();
        assert!(h.contains(&EdgeVector::ones(15), 3, Region::RelativeInterior).unwrap());
        for m in matching::enumerate_perfect_matchings(&g) {
            let x = m.characteristic_vector(15);
            assert!(h.contains(&x, 1, Region::Closed).unwrap());
        }
        assert!(h.contains(&EdgeVector::ones(3), 3, Region::Closed).is_err());
    }

    #[test]
    fn smatching_rows() {
        let g = Graph::grid(3, 3).unwrap();
        let ng = NeighborGraph::new(&g, &SubsetSpec::from_coords(&g, &[(1, 1)]).unwrap()).unwrap();
        let h = smatching_hrep(&ng).unwrap();
        assert_eq!((h.equalities().len(), h.inequalities().len()), (1, 4));
        assert_eq!(h.n_cut_rows(), 0);

        let g = Graph::grid(3, 4).unwrap();
        let s = SubsetSpec::from_coords(&g, &[(1, 1), (1, 2)]).unwrap();
        let h = smatching_hrep(&NeighborGraph::new(&g, &s).unwrap()).unwrap();
        assert_eq!((h.equalities().len(), h.ambient_edges()), (2, 7));

        let g = Graph::torus(2, 3).unwrap();
        let s = SubsetSpec::from_coords(&g, &[(0, 0), (0, 1), (0, 2)]).unwrap();
        assert_eq!(
            smatching_hrep(&NeighborGraph::new(&g, &s).unwrap()),
            Err(Error::NotBipartite)
        );
    }

    #[test]
    fn member_convex_examples() {
        let g = Graph::grid(2, 3).unwrap();
        let vs = matching::characteristic_vectors(&matching::enumerate_perfect_matchings(&g), 7);
        let mid = &vs[0] + &vs[1];
        assert!(member_convex(&vs, &mid, 2).unwrap());
        assert!(member_convex(&vs, &EdgeVector(vs[2].0.iter().map(|x| 3 * x).collect()), 3).unwrap());
        assert!(!member_convex(&vs, &mid, 1).unwrap());
        assert_eq!(member_convex(&[], &mid, 1), Err(Error::NoVertices));
    }

    #[test]
    fn lp_examples() {
        for g in [Graph::grid(2, 3).unwrap(), Graph::torus(2, 3).unwrap(), Graph::grid(2, 4).unwrap()] {
            let h = edmond_hrep(&g).unwrap();
            let ones = vec![q(1); g.n_edges()];
            let sol = lp_optimize(&h, 1, &ones, Sense::Max).unwrap();
            assert_eq!(sol.value, q(g.n_vertices() as i64 / 2));
        }
        let g = Graph::grid(2, 3).unwrap();
        let h = edmond_hrep(&g).unwrap();
        for e in 0..7 {
            let mut c = vec![q(0); 7];
            c[e] = q(1);
            assert_eq!(lp_optimize(&h, 1, &c, Sense::Max).unwrap().value, q(1));
        }
        let h = edmond_hrep(&Graph::from_edges(2, &[]).unwrap()).unwrap();
        assert_eq!(lp_optimize(&h, 1, &[], Sense::Max), Err(Error::Infeasible));
    }

    #[test]
    fn dimensions() {
        let vs = |g: &Graph| {
            matching::characteristic_vectors(&matching::enumerate_perfect_matchings(g), g.n_edges())
        };
        assert_eq!(dimension_from_vertices(&vs(&Graph::torus(2, 5).unwrap())).unwrap(), 5);
        assert_eq!(dimension_from_vertices(&vs(&Graph::grid(2, 3).unwrap())).unwrap(), 2);
        assert_eq!(dimension_from_vertices(&[EdgeVector(vec![1, 0])]).unwrap(), 0);
        assert_eq!(dimension_from_vertices(&[]), Err(Error::NoVertices));

        let g = Graph::grid(5, 4).unwrap();
        let ng = NeighborGraph::new(&g, &SubsetSpec::lattice_interior(&g).unwrap()).unwrap();
        assert_eq!(dimension_formula(&ng).unwrap(), 20 - 5 - 4);

        let g = Graph::grid(2, 3).unwrap();
        let ng = NeighborGraph::new(&g, &SubsetSpec::all(6)).unwrap();
        assert_eq!(dimension_formula(&ng).unwrap(), 2);

        let g = Graph::grid(3, 3).unwrap();
        let ng = NeighborGraph::new(&g, &SubsetSpec::from_coords(&g, &[(1, 1)]).unwrap()).unwrap();
        assert_eq!(dimension_formula(&ng).unwrap(), 3);

        let s = SubsetSpec::from_coords(&g, &[(0, 0), (2, 2)]).unwrap();
        let ng = NeighborGraph::new(&g, &s).unwrap();
        assert!(matches!(dimension_formula(&ng), Err(Error::HypothesisFailed(_))));
        assert_eq!(dimension_formula_components(&ng).unwrap(), 2);
    }

    #[test]
    fn affine_hull_of_torus25() {
        let g = Graph::torus(2, 5).unwrap();
        let vs = matching::characteristic_vectors(&matching::enumerate_perfect_matchings(&g), 15);
        let h = edmond_hrep_for(&g, &vs, DEFAULT_CUT_CAP).unwrap();
        let hull = affine_hull(&h, &vs);
        assert_eq!(hull.dimension, 5);
        let p = hull.base_point.unwrap();
        let ones = vec![q(1); 15];
        let _ = ones;
        for r in h.equalities() {
            let s: Q = r.support.iter().map(|&k| p[k].clone()).sum();
            assert_eq!(s, q(1));
        }
    }
}
