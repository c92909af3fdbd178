//! Explicit edge vectors on tori that separate `lP` from `(l+r)P°`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph, SubsetSpec};
use crate::matching::EdgeVector;
use crate::polytope::{self, Region, ScalableHRep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum WitnessName {
    /// torus(2,3): horizontal edges 1, vertical edges 2.
    Fig1,
    /// torus(2,n), odd n >= 7: horizontal edges 1, vertical edges 0.
    Fig4 { n: usize },
    /// torus(3,n), even n >= 4: three horizontal matchings valued 3 around a
    /// five-vertex gadget whose cut carries total weight 1.
    Fig5 { n: usize },
    /// torus(m,n), even m >= 4, odd n >= 5: horizontal edges 1, vertical 0.
    RowOnes { m: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// Every vertex sum equals `value`.
    VertexSums { value: i64 },
    /// Membership of the vector in `tP` or `tP°` is `expected`.
    Member { t: i64, region: Region, expected: bool },
    /// Membership of the vector plus the all-ones vector.
    ShiftedMember { t: i64, region: Region, expected: bool },
    /// The vector sums to `value` over `cut(subset)`.
    CutSum { subset: SubsetSpec, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub claim: Claim,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct WitnessVector {
    pub name: WitnessName,
    /// Coordinates swapped: the vector lives on torus(n,m).
    pub transposed: bool,
    pub graph: Graph,
    pub vector: EdgeVector,
    pub claims: Vec<Claim>,
    pub note: Option<String>,
}

struct Builder<'a> {
    g: &'a Graph,
    m: usize,
    n: usize,
    x: Vec<i64>,
}

impl Builder<'_> {
    fn set(&mut self, a: (usize, usize), b: (usize, usize), value: i64) {
        let u = self.g.vertex_at(a.0 % self.m, a.1 % self.n).unwrap();
        let v = self.g.vertex_at(b.0 % self.m, b.1 % self.n).unwrap();
        let k = self.g.edge_index(u, v).expect("torus edge");
        self.x[k] = value;
    }

    fn horizontal(&mut self, i: usize, j: usize, value: i64) {
        self.set((i, j), (i, j + 1), value);
    }

    fn vertical(&mut self, i: usize, j: usize, value: i64) {
        self.set((i, j), (i + 1, j), value);
    }
}

fn rows_pattern(g: &Graph, horizontal: i64, vertical: i64) -> EdgeVector {
    EdgeVector(
        (0..g.n_edges())
            .map(|k| if g.is_horizontal(k) { horizontal } else { vertical })
            .collect(),
    )
}

fn top_row(g: &Graph, n: usize) -> Result<SubsetSpec> {
    let coords: Vec<(usize, usize)> = (0..n).map(|j| (0, j)).collect();
    SubsetSpec::from_coords(g, &coords)
}

pub fn witness(name: WitnessName) -> Result<WitnessVector> {
    let out_of_range = |what: &str| Err(Error::InvalidArgument(format!("{what} out of range")));
    let (graph, vector, claims, note) = match name {
        WitnessName::Fig1 => {
            let g = Graph::torus(2, 3)?;
            let x = rows_pattern(&g, 1, 2);
            let claims = vec![
                Claim::VertexSums { value: 4 },
                Claim::Member {
                    t: 4,
                    region: Region::RelativeInterior,
                    expected: true,
                },
            ];
            (g, x, claims, None)
        }
        WitnessName::Fig4 { n } => {
            if n < 7 || n % 2 == 0 {
                return out_of_range("fig4 needs odd n >= 7; n");
            }
            let g = Graph::torus(2, n)?;
            let x = rows_pattern(&g, 1, 0);
            let s = top_row(&g, n)?;
            let claims = vec![
                Claim::VertexSums { value: 2 },
                Claim::CutSum { subset: s, value: 0 },
                Claim::Member {
                    t: 2,
                    region: Region::Closed,
                    expected: false,
                },
                Claim::ShiftedMember {
                    t: 5,
                    region: Region::RelativeInterior,
                    expected: true,
                },
            ];
            (g, x, claims, None)
        }
        WitnessName::Fig5 { n } => {
            if n < 4 || n % 2 == 1 {
                return out_of_range("fig5 needs even n >= 4; n");
            }
            let g = Graph::torus(3, n)?;
            let (x, gadget) = fig5_vector(&g, n)?;
            let claims = vec![
                Claim::VertexSums { value: 3 },
                Claim::CutSum {
                    subset: gadget,
                    value: 1,
                },
                Claim::Member {
                    t: 3,
                    region: Region::Closed,
                    expected: false,
                },
                Claim::ShiftedMember {
                    t: 7,
                    region: Region::RelativeInterior,
                    expected: true,
                },
            ];
            (g, x, claims, None)
        }
        WitnessName::RowOnes { m, n } => {
            if m < 4 || m % 2 == 1 || n < 5 || n % 2 == 0 {
                return out_of_range("row_ones needs even m >= 4 and odd n >= 5; (m, n)");
            }
            let g = Graph::torus(m, n)?;
            let x = rows_pattern(&g, 1, 0);
            let s = top_row(&g, n)?;
            let claims = vec![
                Claim::VertexSums { value: 2 },
                Claim::CutSum { subset: s, value: 0 },
                Claim::Member {
                    t: 2,
                    region: Region::Closed,
                    expected: false,
                },
                Claim::ShiftedMember {
                    t: 6,
                    region: Region::RelativeInterior,
                    expected: true,
                },
            ];
            let note = "the construction is stated with every horizontal and vertical edge 0; \
                        that vector violates the vertex equalities at t = 2, so horizontal \
                        edges carry 1 here, which makes the top-row cut 0 across 2n bridges";
            (g, x, claims, Some(note.to_string()))
        }
    };
    Ok(WitnessVector {
        name,
        transposed: false,
        graph,
        vector,
        claims,
        note,
    })
}

/// The gadget occupies columns `a..a+3` with `a = n/2 - 2`; returns the
/// vector and the five gadget vertices `c_1..c_5`.
fn fig5_vector(g: &Graph, n: usize) -> Result<(EdgeVector, SubsetSpec)> {
    let a = n / 2 - 2;
    let mut b = Builder {
        g,
        m: 3,
        n,
        x: vec![0; g.n_edges()],
    };
    for p in 0..(n - 4) / 2 {
        b.horizontal(0, a + 4 + 2 * p, 3);
        b.horizontal(1, a + 4 + 2 * p, 3);
    }
    for p in 0..(n - 2) / 2 {
        b.horizontal(2, a + 3 + 2 * p, 3);
    }
    b.vertical(0, a, 2);
    b.horizontal(0, a, 1);
    b.horizontal(1, a, 1);
    for col in [a + 1, a + 2] {
        b.vertical(0, col, 1);
        b.vertical(1, col, 1);
        b.vertical(2, col, 1);
    }
    b.horizontal(2, a + 1, 1);
    b.horizontal(0, a + 2, 1);
    b.horizontal(1, a + 2, 1);
    b.vertical(0, a + 3, 2);
    let gadget = SubsetSpec::from_coords(g, &[(0, a), (1, a), (0, a + 1), (1, a + 1), (2, a + 1)])?;
    Ok((EdgeVector(b.x), gadget))
}

/// Moves an edge vector from torus(m,n) to torus(n,m) by swapping vertex
/// coordinates.
pub fn transpose_vector(from: &Graph, x: &EdgeVector, to: &Graph) -> Result<EdgeVector> {
    let mut y = vec![0; to.n_edges()];
    for (k, &(u, v)) in from.edges().iter().enumerate() {
        let (i, j) = from.label(u);
        let (p, q) = from.label(v);
        let (a, b) = (to.vertex_at(j, i), to.vertex_at(q, p));
        let e = a
            .zip(b)
            .and_then(|(a, b)| to.edge_index(a, b))
            .ok_or_else(|| Error::InvalidArgument("graphs are not transposes".into()))?;
        y[e] = x.entries()[k];
    }
    Ok(EdgeVector(y))
}

fn transpose_subset(from: &Graph, s: &SubsetSpec, to: &Graph) -> Result<SubsetSpec> {
    let coords: Vec<(usize, usize)> = s
        .members()
        .iter()
        .map(|&v| {
            let (i, j) = from.label(v);
            (j, i)
        })
        .collect();
    SubsetSpec::from_coords(to, &coords)
}

impl WitnessVector {
    pub fn label(&self) -> String {
        let base = match self.name {
            WitnessName::Fig1 => "fig1".to_string(),
            WitnessName::Fig4 { n } => format!("fig4({n})"),
            WitnessName::Fig5 { n } => format!("fig5({n})"),
            WitnessName::RowOnes { m, n } => format!("row_ones({m},{n})"),
        };
        if self.transposed {
            format!("{base}^T")
        } else {
            base
        }
    }

    /// The same witness on the transposed torus.
    pub fn transposed(&self) -> Result<Self> {
        let (m, n) = self
            .graph
            .dims()
            .ok_or_else(|| Error::InvalidArgument("witness graph has no grid dimensions".into()))?;
        let to = Graph::torus(n, m)?;
        let vector = transpose_vector(&self.graph, &self.vector, &to)?;
        let claims = self
            .claims
            .iter()
            .map(|c| match c {
                Claim::CutSum { subset, value } => Ok(Claim::CutSum {
                    subset: transpose_subset(&self.graph, subset, &to)?,
                    value: *value,
                }),
                other => Ok(other.clone()),
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            name: self.name,
            transposed: !self.transposed,
            graph: to,
            vector,
            claims,
            note: self.note.clone(),
        })
    }

    /// The perfect matching H-description of the witness graph, with the
    /// odd-cut cap raised to the graph size.
    pub fn hrep(&self) -> Result<ScalableHRep> {
        polytope::edmond_hrep_with_cap(&self.graph, self.graph.n_vertices().max(polytope::DEFAULT_CUT_CAP))
    }

    pub fn check(&self, h: &ScalableHRep) -> Result<Vec<ClaimOutcome>> {
        let g = &self.graph;
        let shifted = self.vector.shifted(1);
        self.claims
            .iter()
            .map(|claim| {
                let holds = match claim {
                    Claim::VertexSums { value } => {
                        (0..g.n_vertices()).all(|v| self.vector.sum_over(g.incident(v)) == *value)
                    }
                    Claim::Member { t, region, expected } => {
                        h.contains(&self.vector, *t, *region)? == *expected
                    }
                    Claim::ShiftedMember { t, region, expected } => {
                        h.contains(&shifted, *t, *region)? == *expected
                    }
                    Claim::CutSum { subset, value } => {
                        self.vector.sum_over(&graph::cut(g, subset)) == *value
                    }
                };
                Ok(ClaimOutcome {
                    claim: claim.clone(),
                    holds,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig5_vertex_sums_for_several_widths() {
        for n in [4, 6, 8, 12] {
            let w = witness(WitnessName::Fig5 { n }).unwrap();
            let g = &w.graph;
            for v in 0..g.n_vertices() {
                assert_eq!(w.vector.sum_over(g.incident(v)), 3, "n = {n}, vertex {v}");
            }
        }
    }

    #[test]
    fn transposed_fig5_keeps_the_cut() {
        let w = witness(WitnessName::Fig5 { n: 4 }).unwrap().transposed().unwrap();
        assert_eq!(w.graph.dims(), Some((4, 3)));
        assert_eq!(w.label(), "fig5(4)^T");
        let h = w.hrep().unwrap();
        assert!(w.check(&h).unwrap().iter().all(|o| o.holds));
    }

    #[test]
    fn parameter_ranges() {
        assert!(witness(WitnessName::Fig4 { n: 5 }).is_err());
        assert!(witness(WitnessName::Fig5 { n: 5 }).is_err());
        assert!(witness(WitnessName::RowOnes { m: 4, n: 4 }).is_err());
    }
}
