use std::time::Instant;

use crate::budget::Budget;
use crate::error::Result;
use crate::graph::{Family, Graph, SubsetSpec};

use super::witness::{witness, WitnessName};
use super::{checks, VerificationReport};

/// Check identifiers accepted by `verify --check`.
pub const CHECK_IDS: [&str; 8] = [
    "hokan",
    "lemma-first",
    "lemma-inj",
    "prop-dimensions",
    "cor-gorcor",
    "cor-oyo",
    "theorem-main",
    "witness",
];

/// Largest vertex count for exhaustive subset searches unless overridden.
pub const DEFAULT_SUBSET_CAP: usize = 24;

fn with_subset(g: Graph, coords: &[(usize, usize)]) -> Result<(Graph, SubsetSpec)> {
    let s = SubsetSpec::from_coords(&g, coords)?;
    Ok((g, s))
}

/// `(graph, S)` pairs with `<S>` bipartite and at most 8 edges in `E_S`.
pub fn theorem_main_corpus() -> Result<Vec<(Graph, SubsetSpec)>> {
    let all = |g: Graph| {
        let s = SubsetSpec::all(g.n_vertices());
        (g, s)
    };
    Ok(vec![
        with_subset(Graph::grid(3, 3)?, &[(1, 1)])?,
        with_subset(Graph::grid(3, 4)?, &[(1, 1), (1, 2)])?,
        all(Graph::grid(2, 2)?),
        all(Graph::grid(2, 3)?),
        with_subset(Graph::grid(3, 3)?, &[(0, 0)])?,
        with_subset(Graph::grid(3, 3)?, &[(0, 0), (0, 1)])?,
        with_subset(Graph::grid(3, 3)?, &[(0, 0), (2, 2)])?,
        with_subset(Graph::grid(3, 3)?, &[(0, 0), (0, 2), (2, 0)])?,
        with_subset(Graph::grid(2, 3)?, &[(0, 0), (0, 1), (0, 2)])?,
        with_subset(Graph::torus(2, 3)?, &[(0, 0)])?,
        with_subset(Graph::torus(2, 3)?, &[(0, 0), (1, 0)])?,
        with_subset(Graph::torus(2, 3)?, &[(0, 0), (0, 1)])?,
        with_subset(Graph::torus(3, 3)?, &[(1, 1)])?,
        with_subset(Graph::torus(2, 4)?, &[(0, 0), (0, 1)])?,
    ])
}

/// The default verification suite, in a fixed order.
pub fn run_all(budget: &Budget) -> Result<Vec<VerificationReport>> {
    run_suite(budget, None, false)
}

/// The default suite restricted to one check id when `only` is set. With
/// `timings`, each report carries its wall-clock runtime.
pub fn run_suite(budget: &Budget, only: Option<&str>, timings: bool) -> Result<Vec<VerificationReport>> {
    if let Some(id) = only {
        if !CHECK_IDS.contains(&id) {
            return Err(crate::Error::InvalidArgument(format!("unknown check id {id:?}")));
        }
    }
    let wants = |id: &str| only.is_none_or(|o| o == id);
    let mut out = Vec::new();
    let mut push = |f: &mut dyn FnMut() -> Result<VerificationReport>| -> Result<()> {
        let start = Instant::now();
        let mut r = f()?;
        if timings {
            r.runtime_ms = Some(start.elapsed().as_millis() as u64);
        }
        out.push(r);
        Ok(())
    };
    if wants("hokan") {
        for (m, n) in [(2, 3), (2, 5), (2, 7), (3, 4), (4, 3), (1, 4), (1, 6), (2, 4), (2, 6)] {
            push(&mut || checks::verify_theorem_hokan(m, n, budget))?;
        }
    }
    if wants("lemma-first") {
        for (m, n) in [(3, 3), (3, 4), (4, 4)] {
            push(&mut || checks::verify_lemma_first(m, n, DEFAULT_SUBSET_CAP))?;
        }
    }
    if wants("lemma-inj") {
        for (m, n, k, l) in [(2, 5, 3, 1), (2, 5, 3, 2), (2, 3, 4, 1)] {
            let g = Graph::torus(m, n)?;
            push(&mut || checks::verify_lemma_inj(&g, k, l, budget))?;
        }
    }
    if wants("prop-dimensions") {
        for instance in [
            (Family::Grid, 2, 2),
            (Family::Grid, 2, 3),
            (Family::Grid, 3, 4),
            (Family::Torus, 2, 4),
            (Family::Torus, 2, 5),
            (Family::Torus, 4, 3),
            (Family::Torus, 3, 4),
        ] {
            push(&mut || Ok(checks::verify_prop_dimensions(&[instance])?.remove(0)))?;
        }
    }
    if wants("cor-gorcor") {
        let g44 = Graph::grid(4, 4)?;
        let interior = SubsetSpec::lattice_interior(&g44)?;
        for (g, s) in [
            with_subset(Graph::grid(3, 3)?, &[(1, 1)])?,
            with_subset(Graph::grid(3, 4)?, &[(1, 1), (1, 2)])?,
            (g44, interior),
        ] {
            push(&mut || checks::verify_cor_gorcor(&g, &s, budget))?;
        }
    }
    if wants("cor-oyo") {
        for ((g, s), t_max) in [
            (with_subset(Graph::grid(3, 3)?, &[(1, 1)])?, 3),
            (with_subset(Graph::torus(2, 5)?, &[(0, 0), (0, 1), (0, 2)])?, 2),
            (with_subset(Graph::grid(3, 4)?, &[(0, 1), (1, 1), (1, 2)])?, 2),
        ] {
            push(&mut || checks::verify_cor_oyo(&g, &s, t_max, budget))?;
        }
    }
    if wants("theorem-main") {
        for (g, s) in theorem_main_corpus()? {
            push(&mut || checks::verify_theorem_main(&g, &s, 3, budget))?;
        }
    }
    if wants("witness") {
        let fig5 = witness(WitnessName::Fig5 { n: 4 })?;
        for w in [
            witness(WitnessName::Fig1)?,
            witness(WitnessName::Fig4 { n: 7 })?,
            fig5.transposed()?,
            fig5,
            witness(WitnessName::Fig5 { n: 6 })?,
        ] {
            push(&mut || checks::verify_witness(&w))?;
        }
    }
    Ok(out)
}
