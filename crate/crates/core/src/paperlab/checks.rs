use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::witness::WitnessVector;
use super::{dimension_formula_for, hokan_predicate, VerificationReport, Verdict};
use crate::budget::Budget;
use crate::ehrhart::{self, count_lattice_points, for_each_lattice_point};
use crate::error::{Error, Result};
use crate::graph::{self, Family, Graph, NeighborGraph, Parity, SubsetSpec};
use crate::matching::{self, EdgeVector};
use crate::polytope::{self, ConvexHullOracle, Region, Sense};
use crate::rational::q;

/// Seed of the ChaCha8 stream that draws LP cost vectors.
pub const COST_SEED: u64 = 0x5eed_c057;
/// Cost vectors per LP comparison.
pub const N_COSTS: usize = 20;
/// Largest integer box scanned by the convex-hull oracle.
const MAX_BOX_POINTS: u64 = 1 << 24;

macro_rules! or_inconclusive {
    ($e:expr, $check:expr, $instance:expr, $claim:expr) => {
        match $e {
            Ok(v) => v,
            Err(e @ (Error::BudgetExhausted { .. } | Error::CapExceeded { .. })) => {
                return Ok(VerificationReport::undecided(
                    $check,
                    $instance.clone(),
                    $claim,
                    Verdict::Inconclusive,
                    e.to_string(),
                ))
            }
            Err(e) => return Err(e),
        }
    };
}

fn describe(g: &Graph) -> String {
    match (g.family(), g.dims()) {
        (Family::Grid, Some((m, n))) => format!("grid({m},{n})"),
        (Family::Torus, Some((m, n))) => format!("torus({m},{n})"),
        _ => format!("graph(|V|={}, |E|={})", g.n_vertices(), g.n_edges()),
    }
}

fn describe_with(g: &Graph, s: &SubsetSpec) -> String {
    let coords: Vec<String> = s
        .members()
        .iter()
        .map(|&v| {
            let (i, j) = g.label(v);
            format!("({i},{j})")
        })
        .collect();
    format!("{} S={{{}}}", describe(g), coords.join(","))
}

fn not_applicable(check: &str, instance: String, claim: &str, why: impl Into<String>) -> Result<VerificationReport> {
    Ok(VerificationReport::undecided(check, instance, claim, Verdict::NotApplicable, why.into()))
}

fn dot(c: &[i64], x: &EdgeVector) -> i64 {
    c.iter().zip(x.entries()).map(|(a, b)| a * b).sum()
}

const HOKAN: &str = "the perfect matching polytope of torus(m,n) is Gorenstein iff m = 1 or m is even, \
                     and n is even, or (m,n) is (2,3) or (2,5), up to swapping m and n";

pub fn verify_theorem_hokan(m: usize, n: usize, budget: &Budget) -> Result<VerificationReport> {
    verify_theorem_hokan_with_cap(m, n, budget, polytope::DEFAULT_CUT_CAP)
}

/// Decides Gorensteinness of torus(m,n) and compares with
/// [`hokan_predicate`].
///
/// Instances the predicate classifies as Gorenstein get a full profile. The
/// others are refuted with two counts: once the codegree `r` is found by
/// scanning interior counts, `L_P(t - r) != L_{P°}(t)` at one dilation `t`
/// rules out the Gorenstein property.
pub fn verify_theorem_hokan_with_cap(m: usize, n: usize, budget: &Budget, cut_cap: usize) -> Result<VerificationReport> {
    let check = "hokan";
    let instance = format!("torus({m},{n})");
    let Some(expected) = hokan_predicate(m, n) else {
        return not_applicable(check, instance, HOKAN, "mn is odd, so there are no perfect matchings");
    };
    let g = Graph::torus(m, n)?;
    let h = or_inconclusive!(polytope::edmond_hrep_with_cap(&g, cut_cap), check, instance, HOKAN);
    let even = |k: usize| k.is_multiple_of(2);
    let (lo, hi) = (m.min(n), m.max(n));
    let interior_target = if expected {
        None
    } else if lo == 2 && !even(hi) && hi >= 7 {
        Some(5)
    } else if (m == 3 && even(n)) || (n == 3 && even(m)) {
        Some(7)
    } else if (even(m) && m >= 4 && !even(n) && n >= 5) || (even(n) && n >= 4 && !even(m) && m >= 5) {
        Some(6)
    } else {
        None
    };

    let Some(t_int) = interior_target else {
        let vs = matching::characteristic_vectors(&matching::enumerate_perfect_matchings(&g), g.n_edges());
        let p = or_inconclusive!(ehrhart::profile(&h, &vs, budget), check, instance, HOKAN);
        return Ok(VerificationReport::compare(
            check,
            instance,
            HOKAN,
            json!({ "gorenstein": p.gorenstein }),
            json!({ "gorenstein": expected }),
        )
        .with_evidence(json!({
            "method": "profile",
            "dim": p.dim,
            "h_star": p.h_star,
            "codegree": p.codegree,
        })));
    };

    let mut codegree = None;
    for t in 1..=t_int {
        let c = or_inconclusive!(
            count_lattice_points(&h, t, Region::RelativeInterior, budget),
            check,
            instance,
            HOKAN
        );
        if c > 0 {
            codegree = Some((t, c));
            break;
        }
    }
    let Some((r, at_r)) = codegree else {
        return Ok(VerificationReport::undecided(
            check,
            instance,
            HOKAN,
            Verdict::Inconclusive,
            format!("no interior lattice point up to t = {t_int}"),
        ));
    };
    if at_r != 1 {
        return Ok(VerificationReport::compare(
            check,
            instance,
            HOKAN,
            json!({ "gorenstein": false }),
            json!({ "gorenstein": expected }),
        )
        .with_evidence(json!({ "method": "codegree", "codegree": r, "interior_at_codegree": at_r })));
    }
    let closed = or_inconclusive!(count_lattice_points(&h, t_int - r, Region::Closed, budget), check, instance, HOKAN);
    let interior = or_inconclusive!(
        count_lattice_points(&h, t_int, Region::RelativeInterior, budget),
        check,
        instance,
        HOKAN
    );
    let evidence = json!({
        "method": "two-count",
        "codegree": r,
        "closed": { "t": t_int - r, "count": closed },
        "interior": { "t": t_int, "count": interior },
    });
    if closed == interior {
        return Ok(VerificationReport::undecided(
            check,
            instance,
            HOKAN,
            Verdict::Inconclusive,
            "the two counts agree, so this test cannot refute the Gorenstein property".into(),
        )
        .with_evidence(evidence));
    }
    Ok(VerificationReport::compare(
        check,
        instance,
        HOKAN,
        json!({ "gorenstein": false }),
        json!({ "gorenstein": expected }),
    )
    .with_evidence(evidence))
}

const LEMMA_FIRST: &str = "in torus(m,n) with m, n >= 3, every S with 2 <= |S| <= |V| - 2 has at least 6 cut edges";

/// Exhaustive minimum cut over `2 <= |S| <= |V| - 2`, compared with 6.
pub fn verify_lemma_first(m: usize, n: usize, subset_cap: usize) -> Result<VerificationReport> {
    let check = "lemma-first";
    let instance = format!("torus({m},{n})");
    if m < 3 || n < 3 {
        return not_applicable(check, instance, LEMMA_FIRST, "needs m, n >= 3");
    }
    let g = Graph::torus(m, n)?;
    let nv = g.n_vertices();
    if nv > subset_cap {
        let e = Error::CapExceeded {
            what: "subset search",
            n_vertices: nv,
            cap: subset_cap,
        };
        return Ok(VerificationReport::undecided(check, instance, LEMMA_FIRST, Verdict::Inconclusive, e.to_string()));
    }
    let (min, witness) = or_inconclusive!(
        graph::min_cut_over_subsets(&g, 2, nv - 2, Parity::Any),
        check,
        instance,
        LEMMA_FIRST
    );
    Ok(VerificationReport::compare(
        check,
        instance,
        LEMMA_FIRST,
        json!({ "min_cut_at_least_6": min >= 6 }),
        json!({ "min_cut_at_least_6": true }),
    )
    .with_evidence(json!({ "min_cut": min, "witness": witness })))
}

const LEMMA_INJ: &str = "if the all-ones vector satisfies the strict system at level k, then x -> x + 1 maps \
                         the lattice points of lP injectively into (l+k)P°";

pub fn verify_lemma_inj(g: &Graph, k: i64, l: i64, budget: &Budget) -> Result<VerificationReport> {
    let check = "lemma-inj";
    let instance = format!("{} k={k} l={l}", describe(g));
    let h = or_inconclusive!(polytope::edmond_hrep(g), check, instance, LEMMA_INJ);
    if !h.satisfies_strict(&EdgeVector::ones(g.n_edges()), k)? {
        return not_applicable(
            check,
            instance,
            LEMMA_INJ,
            format!("the all-ones vector does not satisfy the strict system at level {k}"),
        );
    }
    let mut points = 0u64;
    let mut inside = 0u64;
    let mut images = HashSet::new();
    let mut first_bad = None;
    let mut err = None;
    let walked = for_each_lattice_point(&h, l, Region::Closed, budget, &mut |x| {
        points += 1;
        let y = x.shifted(1);
        match h.contains(&y, l + k, Region::RelativeInterior) {
            Ok(true) => inside += 1,
            Ok(false) => {
                first_bad.get_or_insert_with(|| x.clone());
            }
            Err(e) => err = Some(e),
        }
        images.insert(y);
    });
    or_inconclusive!(walked, check, instance, LEMMA_INJ);
    if let Some(e) = err {
        return Err(e);
    }
    let mut report = VerificationReport::compare(
        check,
        instance,
        LEMMA_INJ,
        json!({ "points": points, "images_inside": inside, "distinct_images": images.len() }),
        json!({ "points": points, "images_inside": points, "distinct_images": points }),
    );
    if let Some(x) = first_bad {
        report = report.with_note(format!("image of {:?} is outside", x.entries()));
    }
    Ok(report)
}

const PROP_DIMENSIONS: &str = "closed-form dimensions of grid and torus perfect matching polytopes";

/// Dimension from the perfect-matching vectors against the closed forms of
/// [`dimension_formula_for`], one report per instance.
pub fn verify_prop_dimensions(instances: &[(Family, usize, usize)]) -> Result<Vec<VerificationReport>> {
    let check = "prop-dimensions";
    instances
        .iter()
        .map(|&(family, m, n)| {
            let g = match family {
                Family::Grid => Graph::grid(m, n)?,
                Family::Torus => Graph::torus(m, n)?,
                Family::Custom => return Err(Error::InvalidArgument("dimension formulas cover grids and tori".into())),
            };
            let instance = describe(&g);
            let Some(expected) = dimension_formula_for(family, m, n) else {
                return not_applicable(check, instance, PROP_DIMENSIONS, "no closed form for this instance");
            };
            let vs = matching::characteristic_vectors(&matching::enumerate_perfect_matchings(&g), g.n_edges());
            if vs.is_empty() {
                return not_applicable(check, instance, PROP_DIMENSIONS, "no perfect matchings");
            }
            let dim = polytope::dimension_from_vertices(&vs)?;
            Ok(VerificationReport::compare(check, instance, PROP_DIMENSIONS, json!(dim), json!(expected))
                .with_evidence(json!({ "vertices": vs.len() })))
        })
        .collect()
}

const COR_GORCOR: &str = "if <S> is bipartite and every vertex of S has degree k, the S-matching polytope is \
                          Gorenstein of codegree k";

pub fn verify_cor_gorcor(g: &Graph, s: &SubsetSpec, budget: &Budget) -> Result<VerificationReport> {
    let check = "cor-gorcor";
    let instance = describe_with(g, s);
    let ng = NeighborGraph::new(g, s)?;
    let h = match polytope::smatching_hrep(&ng) {
        Err(Error::NotBipartite) => return not_applicable(check, instance, COR_GORCOR, "<S> is not bipartite"),
        other => other?,
    };
    let k = g.degree(s.members()[0]);
    if s.members().iter().any(|&v| g.degree(v) != k) {
        return not_applicable(check, instance, COR_GORCOR, "vertices of S have different degrees");
    }
    let vs = matching::characteristic_vectors(&matching::enumerate_s_matchings(&ng), ng.n_slots());
    let p = or_inconclusive!(ehrhart::profile(&h, &vs, budget), check, instance, COR_GORCOR);
    let mut computed = json!({ "gorenstein": p.gorenstein, "codegree": p.codegree });
    let mut expected = json!({ "gorenstein": true, "codegree": k });
    let mut note = None;
    match polytope::dimension_formula_components(&ng) {
        Ok(d) => {
            computed["dim"] = json!(p.dim);
            expected["dim"] = json!(d);
        }
        Err(e) => note = Some(format!("dimension formula not applicable: {e}")),
    }
    let mut report = VerificationReport::compare(check, instance, COR_GORCOR, computed, expected)
        .with_evidence(json!({ "h_star": p.h_star, "edges": ng.n_slots(), "s": s.len() }));
    if let Some(n) = note {
        report = report.with_note(n);
    }
    Ok(report)
}

const COR_OYO: &str = "if |S| is odd and <S> is bipartite, every lattice point of tP_S puts weight at least t \
                       on the cut edges of S";

pub fn verify_cor_oyo(g: &Graph, s: &SubsetSpec, t_max: i64, budget: &Budget) -> Result<VerificationReport> {
    let check = "cor-oyo";
    let instance = format!("{} t<={t_max}", describe_with(g, s));
    if s.len().is_multiple_of(2) {
        return not_applicable(check, instance, COR_OYO, "|S| is even");
    }
    let ng = NeighborGraph::new(g, s)?;
    let h = match polytope::smatching_hrep(&ng) {
        Err(Error::NotBipartite) => return not_applicable(check, instance, COR_OYO, "<S> is not bipartite"),
        other => other?,
    };
    let bridges: Vec<usize> = ng.bridges().collect();
    let mut violations = 0u64;
    let mut checked = 0u64;
    let mut first_bad = None;
    for t in 1..=t_max {
        let walked = for_each_lattice_point(&h, t, Region::Closed, budget, &mut |x| {
            checked += 1;
            if x.sum_over(&bridges) < t {
                violations += 1;
                first_bad.get_or_insert_with(|| (t, x.clone()));
            }
        });
        or_inconclusive!(walked, check, instance, COR_OYO);
    }
    let mut report = VerificationReport::compare(
        check,
        instance,
        COR_OYO,
        json!({ "violations": violations }),
        json!({ "violations": 0 }),
    )
    .with_evidence(json!({ "points_checked": checked }));
    if let Some((t, x)) = first_bad {
        report = report.with_note(format!("t = {t}: {:?}", x.entries()));
    }
    Ok(report)
}

const THEOREM_MAIN: &str = "if <S> is bipartite, the S-matching polytope is {x >= 0 : each S-vertex sum is 1}";

/// Cost vectors with entries in `[-5, 5]` from the fixed ChaCha8 stream.
pub(crate) fn seeded_costs(len: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(COST_SEED);
    (0..N_COSTS)
        .map(|_| (0..len).map(|_| rng.gen_range(-5..=5)).collect())
        .collect()
}

/// Four independent confirmations that the H-system describes the convex
/// hull of the S-matching vectors: vertices satisfy it, its integer points
/// at t = 1 are exactly the vertices, LP optima equal the best vertex for
/// seeded costs, and its dilation counts equal those of the convex-hull
/// oracle over the integer box `[0, t]^{E_S}`.
pub fn verify_theorem_main(g: &Graph, s: &SubsetSpec, t_max: i64, budget: &Budget) -> Result<VerificationReport> {
    let check = "theorem-main";
    let instance = describe_with(g, s);
    let ng = NeighborGraph::new(g, s)?;
    let h = match polytope::smatching_hrep(&ng) {
        Err(Error::NotBipartite) => return not_applicable(check, instance, THEOREM_MAIN, "<S> is not bipartite"),
        other => other?,
    };
    let e = ng.n_slots();
    let mut vs = matching::characteristic_vectors(&matching::enumerate_s_matchings(&ng), e);
    vs.sort();
    let mut notes = Vec::new();

    let mut outside = 0u64;
    for v in &vs {
        if !h.contains(v, 1, Region::Closed)? {
            outside += 1;
            notes.push(format!("vertex {:?} violates the system", v.entries()));
        }
    }

    let mut integer_points = or_inconclusive!(
        ehrhart::lattice_points(&h, 1, Region::Closed, budget),
        check,
        instance,
        THEOREM_MAIN
    );
    integer_points.sort();
    let vertex_set: HashSet<&EdgeVector> = vs.iter().collect();
    let extra: Vec<&EdgeVector> = integer_points.iter().filter(|x| !vertex_set.contains(x)).collect();
    if let Some(x) = extra.first() {
        notes.push(format!("integer point {:?} is no S-matching", x.entries()));
    }
    let missing = vs.len() as i64 - (integer_points.len() - extra.len()) as i64;

    let mut lp_mismatches = 0u64;
    for c in seeded_costs(e) {
        let best = vs.iter().map(|v| dot(&c, v)).max();
        let cost: Vec<_> = c.iter().map(|&x| q(x)).collect();
        let lp = polytope::lp_optimize(&h, 1, &cost, Sense::Max)?;
        if best.map(q) != Some(lp.value.clone()) {
            lp_mismatches += 1;
            notes.push(format!("cost {c:?}: LP {} vs best vertex {best:?}", lp.value));
        }
    }

    let oracle = ConvexHullOracle::new(&vs)?;
    let mut count_mismatches = 0u64;
    let mut per_t = Vec::new();
    for t in 1..=t_max {
        let side = (t + 1) as u64;
        if side.checked_pow(e as u32).is_none_or(|b| b > MAX_BOX_POINTS) {
            return Ok(VerificationReport::undecided(
                check,
                instance,
                THEOREM_MAIN,
                Verdict::Inconclusive,
                format!("integer box [0,{t}]^{e} is too large for the convex-hull oracle"),
            ));
        }
        let h_count = or_inconclusive!(
            count_lattice_points(&h, t, Region::Closed, budget),
            check,
            instance,
            THEOREM_MAIN
        );
        let o_count = or_inconclusive!(box_count(&oracle, e, t, budget), check, instance, THEOREM_MAIN);
        if h_count != o_count {
            count_mismatches += 1;
            notes.push(format!("t = {t}: H-count {h_count}, oracle count {o_count}"));
        }
        per_t.push(json!({ "t": t, "count": h_count }));
    }

    let mut report = VerificationReport::compare(
        check,
        instance,
        THEOREM_MAIN,
        json!({
            "vertices_outside": outside,
            "non_vertex_integer_points": extra.len(),
            "missing_vertices": missing,
            "lp_mismatches": lp_mismatches,
            "count_mismatches": count_mismatches,
        }),
        json!({
            "vertices_outside": 0,
            "non_vertex_integer_points": 0,
            "missing_vertices": 0,
            "lp_mismatches": 0,
            "count_mismatches": 0,
        }),
    )
    .with_evidence(json!({ "vertices": vs.len(), "edges": e, "counts": per_t, "costs": N_COSTS }));
    if !notes.is_empty() {
        report = report.with_note(notes.join("; "));
    }
    Ok(report)
}

/// Points of `[0, t]^len` inside `t · conv(vertices)`.
fn box_count(oracle: &ConvexHullOracle, len: usize, t: i64, budget: &Budget) -> Result<u64> {
    let mut x = EdgeVector::zeros(len);
    let mut count = 0u64;
    let mut visited = 0u64;
    loop {
        if oracle.contains(&x, t)? {
            count += 1;
        }
        visited += 1;
        if visited.is_multiple_of(4096) && budget.expired() {
            return Err(Error::BudgetExhausted {
                nodes: visited,
                partial: count,
            });
        }
        let Some(k) = x.0.iter().position(|&v| v < t) else {
            return Ok(count);
        };
        x.0[k] += 1;
        for v in &mut x.0[..k] {
            *v = 0;
        }
    }
}

const WITNESS: &str = "the witness vector has the stated vertex sums, cut sums and memberships";

pub fn verify_witness(w: &WitnessVector) -> Result<VerificationReport> {
    let check = "witness";
    let instance = w.label();
    let h = or_inconclusive!(w.hrep(), check, instance, WITNESS);
    let outcomes = w.check(&h)?;
    let computed: Vec<Value> = outcomes.iter().map(|o| json!(o.holds)).collect();
    let expected = vec![json!(true); outcomes.len()];
    let mut report = VerificationReport::compare(check, instance, WITNESS, json!(computed), json!(expected))
        .with_evidence(json!({ "claims": w.claims, "vector": w.vector }));
    if let Some(note) = &w.note {
        report = report.with_note(note.clone());
    }
    Ok(report)
}
