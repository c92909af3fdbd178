//! Simple undirected graphs with a canonical edge order.
//!
//! Vertices of grid and torus graphs are indexed row-major: `(i, j) -> i * n + j`.
//! Edges are normalized to `(u, v)` with `u < v` and kept in strictly increasing
//! lexicographic order. The position of an edge in that list is its canonical
//! index, and every edge vector in this crate is indexed by it.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Grid,
    Torus,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    family: Family,
    dims: Option<(usize, usize)>,
    labels: Vec<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// The `m x n` grid graph. `grid(1, 1)` is a single isolated vertex.
    pub fn grid(m: usize, n: usize) -> Result<Self> {
        Self::lattice(Family::Grid, m, n)
    }

    /// The `m x n` torus graph, collapsed to a simple graph.
    ///
    /// Wraparound edges that would be loops (`m == 1` or `n == 1`) or that
    /// duplicate a grid edge (`m == 2` or `n == 2`) are dropped.
    pub fn torus(m: usize, n: usize) -> Result<Self> {
        Self::lattice(Family::Torus, m, n)
    }

    fn lattice(family: Family, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "lattice dimensions must be positive, got {m}x{n}"
            )));
        }
        let id = |i: usize, j: usize| i * n + j;
        let mut edges = Vec::new();
        for i in 0..m {
            for j in 0..n {
                if i + 1 < m {
                    edges.push((id(i, j), id(i + 1, j)));
                }
                if j + 1 < n {
                    edges.push((id(i, j), id(i, j + 1)));
                }
            }
        }
        if family == Family::Torus {
            for j in 0..n {
                edges.push((id(0, j), id(m - 1, j)));
            }
            for i in 0..m {
                edges.push((id(i, 0), id(i, n - 1)));
            }
        }
        edges.retain(|&(u, v)| u != v);
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let labels = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Ok(Self::assemble(family, Some((m, n)), labels, edges))
    }

    /// A custom simple graph. Loops and duplicate edges are rejected.
    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..n_vertices).map(|v| (0, v)).collect();
        Self::from_parts(labels, edges)
    }

    /// A custom simple graph with lattice labels, one per vertex.
    pub fn from_parts(labels: Vec<(usize, usize)>, edges: &[(usize, usize)]) -> Result<Self> {
        let n_vertices = labels.len();
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        n_vertices,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidEdge(u, v, "loop"));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge(w[0].0, w[0].1, "duplicate edge"));
        }
        Ok(Self::assemble(Family::Custom, None, labels, normalized))
    }

    fn assemble(
        family: Family,
        dims: Option<(usize, usize)>,
        labels: Vec<(usize, usize)>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        let mut incident = vec![Vec::new(); labels.len()];
        for (k, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(k);
            incident[v].push(k);
        }
        let g = Self {
            family,
            dims,
            labels,
            edges,
            incident,
        };
        debug_assert!(g.is_canonical());
        g
    }

    fn is_canonical(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u < v && v < self.n_vertices())
            && self.edges.windows(2).all(|w| w[0] < w[1])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `(m, n)` for grid and torus graphs.
    pub fn dims(&self) -> Option<(usize, usize)> {
        self.dims
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> (usize, usize) {
        self.edges[k]
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> (usize, usize) {
        self.labels[v]
    }

    /// Canonical edge indices incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().map(move |&k| {
            let (a, b) = self.edges[k];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Vertex index of the lattice label `(i, j)`.
    pub fn vertex_at(&self, i: usize, j: usize) -> Option<usize> {
        match self.dims {
            Some((m, n)) if i < m && j < n => Some(i * n + j),
            Some(_) => None,
            None => self.labels.iter().position(|&l| l == (i, j)),
        }
    }

    /// True iff the edge joins two vertices of the same lattice row.
    pub fn is_horizontal(&self, k: usize) -> bool {
        let (u, v) = self.edges[k];
        self.labels[u].0 == self.labels[v].0
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            m: self.dims.map(|d| d.0),
            n: self.dims.map(|d| d.1),
            family: self.family,
            vertices: self.labels.iter().map(|&(i, j)| [i, j]).collect(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    /// Rebuilds a graph from its JSON form. Grid and torus documents are
    /// regenerated from `m` and `n` and must match the stored edge list.
    pub fn from_json(doc: &GraphJson) -> Result<Self> {
        match doc.family {
            Family::Grid | Family::Torus => {
                let (m, n) = doc.m.zip(doc.n).ok_or_else(|| {
                    Error::InvalidArgument("grid/torus documents need m and n".into())
                })?;
                let g = Self::lattice(doc.family, m, n)?;
                let edges: Vec<_> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
                if !doc.edges.is_empty() && edges != g.edges {
                    return Err(Error::Inconsistent(
                        "edge list does not match the named family".into(),
                    ));
                }
                Ok(g)
            }
            Family::Custom => {
                let labels = doc.vertices.iter().map(|v| (v[0], v[1])).collect();
                let edges: Vec<_> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
                Self::from_parts(labels, &edges)
            }
        }
    }

    /// Graphviz rendering: one node per vertex labelled by its lattice
    /// coordinates, edges in canonical order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (v, (i, j)) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  {v} [label=\"({i},{j})\"];");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub family: Family,
    pub vertices: Vec<[usize; 2]>,
    pub edges: Vec<[usize; 2]>,
}

/// A strictly sorted set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetSpec {
    members: Vec<usize>,
}

impl SubsetSpec {
    /// Validates against `n_vertices`; input order is irrelevant, repeats are rejected.
    pub fn new(mut members: Vec<usize>, n_vertices: usize) -> Result<Self> {
        members.sort_unstable();
        if let Some(&v) = members.iter().find(|&&v| v >= n_vertices) {
            return Err(Error::VertexOutOfRange { vertex: v, n_vertices });
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("subset has repeated vertices".into()));
        }
        Ok(Self { members })
    }

    pub fn all(n_vertices: usize) -> Self {
        Self {
            members: (0..n_vertices).collect(),
        }
    }

    pub fn empty() -> Self {
        Self { members: Vec::new() }
    }

    /// Subset given by lattice labels of `g`.
    pub fn from_coords(g: &Graph, coords: &[(usize, usize)]) -> Result<Self> {
        let members = coords
            .iter()
            .map(|&(i, j)| {
                g.vertex_at(i, j).ok_or_else(|| {
                    Error::InvalidArgument(format!("no vertex labelled ({i},{j})"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(members, g.n_vertices())
    }

    /// Vertices `(i, j)` with `1 <= i <= m-2` and `1 <= j <= n-2`.
    pub fn lattice_interior(g: &Graph) -> Result<Self> {
        let (m, n) = g
            .dims()
            .ok_or_else(|| Error::InvalidArgument("interior needs a lattice graph".into()))?;
        let coords: Vec<_> = (1..m.saturating_sub(1))
            .flat_map(|i| (1..n.saturating_sub(1)).map(move |j| (i, j)))
            .collect();
        Self::from_coords(g, &coords)
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        let mut w = mask;
        while w != 0 {
            members.push(w.trailing_zeros() as usize);
            w &= w - 1;
        }
        Self { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn complement(&self, n_vertices: usize) -> Self {
        Self {
            members: (0..n_vertices).filter(|&v| !self.contains(v)).collect(),
        }
    }

    pub(crate) fn indicator(&self, n_vertices: usize) -> Vec<bool> {
        let mut ind = vec![false; n_vertices];
        for &v in &self.members {
            ind[v] = true;
        }
        ind
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotKind {
    /// Both endpoints in S.
    Internal,
    /// Exactly one endpoint in S.
    Bridge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSlot {
    pub base_edge: usize,
    pub endpoints: (usize, usize),
    pub kind: SlotKind,
}

/// The subgraph `(S ∪ Γ(S), C(S, V))` of a base graph.
///
/// Slots are the edges with at least one endpoint in S, in base canonical
/// order; the slot index is the coordinate used by S-matching vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborGraph {
    base: Graph,
    s: SubsetSpec,
    gamma: Vec<usize>,
    slots: Vec<EdgeSlot>,
    slot_incident: Vec<Vec<usize>>,
}

impl NeighborGraph {
    pub fn new(g: &Graph, s: &SubsetSpec) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        let n = g.n_vertices();
        if let Some(&v) = s.members().last().filter(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n_vertices: n });
        }
        let in_s = s.indicator(n);
        let mut in_gamma = vec![false; n];
        let mut slots = Vec::new();
        let mut slot_incident = vec![Vec::new(); n];
        for (k, &(u, v)) in g.edges().iter().enumerate() {
            let kind = match (in_s[u], in_s[v]) {
                (true, true) => SlotKind::Internal,
                (true, false) => {
                    in_gamma[v] = true;
                    SlotKind::Bridge
                }
                (false, true) => {
                    in_gamma[u] = true;
                    SlotKind::Bridge
                }
                (false, false) => continue,
            };
            let idx = slots.len();
            slot_incident[u].push(idx);
            slot_incident[v].push(idx);
            slots.push(EdgeSlot {
                base_edge: k,
                endpoints: (u, v),
                kind,
            });
        }
        let gamma = (0..n).filter(|&v| in_gamma[v]).collect();
        Ok(Self {
            base: g.clone(),
            s: s.clone(),
            gamma,
            slots,
            slot_incident,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn s(&self) -> &SubsetSpec {
        &self.s
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn slots(&self) -> &[EdgeSlot] {
        &self.slots
    }

    pub fn n_slots(&self) -> usize {
        self.slots.len()
    }

    /// Slot indices incident to base vertex `v` (empty outside `V_S`).
    pub fn slot_incident(&self, v: usize) -> &[usize] {
        &self.slot_incident[v]
    }

    pub fn bridges(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SlotKind::Bridge)
            .map(|(i, _)| i)
    }
}

/// `⟨S⟩` together with the map from its vertices back to the base graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<usize>,
}

pub fn induced_subgraph(g: &Graph, s: &SubsetSpec) -> Result<InducedSubgraph> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = g.n_vertices();
    let mut new_index = vec![usize::MAX; n];
    for (k, &v) in s.members().iter().enumerate() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n_vertices: n });
        }
        new_index[v] = k;
    }
    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| new_index[u] != usize::MAX && new_index[v] != usize::MAX)
        .map(|&(u, v)| (new_index[u], new_index[v]))
        .collect();
    let labels = s.members().iter().map(|&v| g.label(v)).collect();
    let mut graph = Graph::from_parts(labels, &edges)?;
    if s.len() == n {
        graph.family = g.family;
        graph.dims = g.dims;
    }
    Ok(InducedSubgraph {
        graph,
        vertex_map: s.members().to_vec(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    One,
    Two,
}

/// A proper two-coloring if one exists.
///
/// Components are explored by BFS from their lowest-index vertex, which is
/// colored [`Side::One`].
pub fn is_bipartite(g: &Graph) -> Option<Vec<Side>> {
    let n = g.n_vertices();
    let mut color: Vec<Option<Side>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(Side::One);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            let other = match cu {
                Side::One => Side::Two,
                Side::Two => Side::One,
            };
            for w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(other);
                        queue.push_back(w);
                    }
                    Some(c) if c == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Connected components, each sorted, ordered by their least vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n_vertices();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Canonical indices of the edges with exactly one endpoint in `s`.
pub fn cut(g: &Graph, s: &SubsetSpec) -> Vec<usize> {
    let in_s = s.indicator(g.n_vertices());
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(_, &(u, v))| in_s[u] != in_s[v])
        .map(|(k, _)| k)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Any,
    Odd,
    Even,
}

impl Parity {
    fn admits(self, size: usize) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => size % 2 == 1,
            Parity::Even => size.is_multiple_of(2),
        }
    }
}

/// Largest vertex count accepted by [`min_cut_over_subsets`].
pub const MAX_SUBSET_SEARCH_VERTICES: usize = 40;

/// Exhaustive minimum of `|C(S, S')|` over all S with `size_lo <= |S| <= size_hi`
/// of the given parity. Ties go to the lexicographically least member list.
///
/// Subsets are visited in Gray-code order so each step updates the cut size
/// from a single vertex flip.
pub fn min_cut_over_subsets(
    g: &Graph,
    size_lo: usize,
    size_hi: usize,
    parity: Parity,
) -> Result<(usize, SubsetSpec)> {
    let n = g.n_vertices();
    if size_lo == 0 || size_lo > size_hi || size_hi >= n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < size_lo <= size_hi < |V| = {n}, got {size_lo}..={size_hi}"
        )));
    }
    if !(size_lo..=size_hi).any(|k| parity.admits(k)) {
        return Err(Error::InvalidArgument("no subset size matches the parity".into()));
    }
    if n > MAX_SUBSET_SEARCH_VERTICES {
        return Err(Error::CapExceeded {
            what: "subset search",
            n_vertices: n,
            cap: MAX_SUBSET_SEARCH_VERTICES,
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
        .collect();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();

    let mut mask = 0u64;
    let mut size = 0usize;
    let mut cut_size = 0i64;
    let mut best: Option<(i64, u64)> = None;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let c = (adj[v] & mask).count_ones() as i64;
        if mask >> v & 1 == 0 {
            cut_size += deg[v] - 2 * c;
            mask |= 1 << v;
            size += 1;
        } else {
            cut_size += 2 * c - deg[v];
            mask &= !(1 << v);
            size -= 1;
        }
        if size < size_lo || size > size_hi || !parity.admits(size) {
            continue;
        }
        best = match best {
            Some((b, bm)) if cut_size > b || (cut_size == b && !lex_less(mask, bm)) => {
                Some((b, bm))
            }
            _ => Some((cut_size, mask)),
        };
    }
    let (b, bm) = best.expect("nonempty range visits at least one subset");
    Ok((b as usize, SubsetSpec::from_mask(bm)))
}

/// Lexicographic comparison of the sorted member lists of two bit masks.
fn lex_less(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let i = (a ^ b).trailing_zeros();
    let above = |m: u64| if i >= 63 { 0 } else { m >> (i + 1) };
    if a >> i & 1 == 1 {
        // a continues with i, b continues with something larger or stops.
        above(b) != 0
    } else {
        above(a) == 0
    }
}
