//! Perfect matchings and S-matchings, and their characteristic vectors.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NeighborGraph, SlotKind, SubsetSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Perfect,
    SScope(SubsetSpec),
}

/// A set of edges, by index into the ambient edge list (`E` for perfect
/// matchings, the slots of `E_S` for S-matchings).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pub edge_ids: Vec<usize>,
    pub scope: Scope,
}

/// Exact integer vector indexed by canonical edge (or slot) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeVector(pub Vec<i64>);

impl EdgeVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![1; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum_over(&self, support: &[usize]) -> i64 {
        support.iter().map(|&k| self.0[k]).sum()
    }

    /// `self + 1`, the shift map used to move lattice points of `lP` into
    /// the interior of a larger dilate.
    pub fn shifted(&self, by: i64) -> Self {
        Self(self.0.iter().map(|x| x + by).collect())
    }
}

impl std::ops::Add for &EdgeVector {
    type Output = EdgeVector;
    fn add(self, rhs: &EdgeVector) -> EdgeVector {
        EdgeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    /// 0/1 vector of length `ambient_len` with ones exactly on `edge_ids`.
    pub fn characteristic_vector(&self, ambient_len: usize) -> EdgeVector {
        let mut v = EdgeVector::zeros(ambient_len);
        for &k in &self.edge_ids {
            v.0[k] = 1;
        }
        v
    }

    /// Re-checks the defining property against the perfect-matching ambient.
    pub fn is_perfect_in(&self, g: &Graph) -> bool {
        let mut hits = vec![0u32; g.n_vertices()];
        for &k in &self.edge_ids {
            if k >= g.n_edges() {
                return false;
            }
            let (u, v) = g.edge(k);
            hits[u] += 1;
            hits[v] += 1;
        }
        self.scope == Scope::Perfect && hits.iter().all(|&h| h == 1)
    }

    /// Re-checks the S-matching property: every S-vertex lies on exactly one
    /// edge of the matching. Two bridges may share a Γ(S) endpoint.
    pub fn is_s_matching_in(&self, ng: &NeighborGraph) -> bool {
        let n = ng.base().n_vertices();
        let mut hits = vec![0u32; n];
        for &k in &self.edge_ids {
            let Some(slot) = ng.slots().get(k) else {
                return false;
            };
            let (u, v) = slot.endpoints;
            hits[u] += 1;
            hits[v] += 1;
        }
        self.scope == Scope::SScope(ng.s().clone())
            && ng.s().members().iter().all(|&v| hits[v] == 1)
    }
}

/// All perfect matchings, each exactly once, sorted by edge ids.
///
/// Backtracks on the lowest uncovered vertex, trying its incident edges in
/// canonical order.
pub fn enumerate_perfect_matchings(g: &Graph) -> Vec<Matching> {
    let n = g.n_vertices();
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    let mut covered = vec![false; n];
    let mut chosen = Vec::with_capacity(n / 2);
    perfect_rec(g, &mut covered, &mut chosen, 0, &mut out);
    out.sort();
    out
}

fn perfect_rec(
    g: &Graph,
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    from: usize,
    out: &mut Vec<Matching>,
) {
    let Some(v) = (from..covered.len()).find(|&v| !covered[v]) else {
        let mut edge_ids = chosen.clone();
        edge_ids.sort_unstable();
        out.push(Matching {
            edge_ids,
            scope: Scope::Perfect,
        });
        return;
    };
    covered[v] = true;
    for &k in g.incident(v) {
        let (a, b) = g.edge(k);
        let w = if a == v { b } else { a };
        if covered[w] {
            continue;
        }
        covered[w] = true;
        chosen.push(k);
        perfect_rec(g, covered, chosen, v + 1, out);
        chosen.pop();
        covered[w] = false;
    }
    covered[v] = false;
}

/// All S-matchings of a neighbor graph, sorted by slot ids.
pub fn enumerate_s_matchings(ng: &NeighborGraph) -> Vec<Matching> {
    let n = ng.base().n_vertices();
    let s = ng.s().members();
    let mut covered = vec![false; n];
    let mut chosen = Vec::with_capacity(s.len());
    let mut out = Vec::new();
    s_rec(ng, s, 0, &mut covered, &mut chosen, &mut out);
    out.sort();
    out
}

fn s_rec(
    ng: &NeighborGraph,
    s: &[usize],
    from: usize,
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Matching>,
) {
    let Some(pos) = (from..s.len()).find(|&i| !covered[s[i]]) else {
        let mut edge_ids = chosen.clone();
        edge_ids.sort_unstable();
        out.push(Matching {
            edge_ids,
            scope: Scope::SScope(ng.s().clone()),
        });
        return;
    };
    let v = s[pos];
    covered[v] = true;
    for &k in ng.slot_incident(v) {
        let slot = ng.slots()[k];
        let (a, b) = slot.endpoints;
        let w = if a == v { b } else { a };
        let internal = slot.kind == SlotKind::Internal;
        if internal && covered[w] {
            continue;
        }
        if internal {
            covered[w] = true;
        }
        chosen.push(k);
        s_rec(ng, s, pos + 1, covered, chosen, out);
        chosen.pop();
        if internal {
            covered[w] = false;
        }
    }
    covered[v] = false;
}

pub fn characteristic_vectors(ms: &[Matching], ambient_len: usize) -> Vec<EdgeVector> {
    ms.iter()
        .map(|m| m.characteristic_vector(ambient_len))
        .collect()
}
