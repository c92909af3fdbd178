//! Executable checks of the Gorenstein classification of torus matching
//! polytopes and of the S-matching polytope results.

mod checks;
mod suite;
pub mod witness;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graph::Family;

pub use checks::{
    verify_cor_gorcor, verify_cor_oyo, verify_lemma_first, verify_lemma_inj, verify_prop_dimensions,
    verify_theorem_hokan, verify_theorem_hokan_with_cap, verify_theorem_main, verify_witness,
    COST_SEED, N_COSTS,
};
pub use suite::{run_all, run_suite, theorem_main_corpus, CHECK_IDS, DEFAULT_SUBSET_CAP};
pub use witness::{witness, Claim, ClaimOutcome, WitnessName, WitnessVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub instance: String,
    /// The statement being checked.
    pub claim: String,
    pub computed: Value,
    pub expected: Value,
    pub verdict: Verdict,
    /// Supporting numbers that are not part of the comparison.
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub evidence: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<u64>,
}

impl VerificationReport {
    /// Pass iff `computed == expected`.
    pub fn compare(check: &str, instance: String, claim: &str, computed: Value, expected: Value) -> Self {
        let verdict = if computed == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            check: check.to_string(),
            instance,
            claim: claim.to_string(),
            computed,
            expected,
            verdict,
            evidence: Value::Null,
            note: None,
            runtime_ms: None,
        }
    }

    pub fn undecided(check: &str, instance: String, claim: &str, verdict: Verdict, why: String) -> Self {
        debug_assert!(matches!(verdict, Verdict::Inconclusive | Verdict::NotApplicable));
        Self {
            check: check.to_string(),
            instance,
            claim: claim.to_string(),
            computed: Value::Null,
            expected: Value::Null,
            verdict,
            evidence: Value::Null,
            note: Some(why),
            runtime_ms: None,
        }
    }

    pub fn with_evidence(mut self, evidence: Value) -> Self {
        self.evidence = evidence;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        self
    }
}

/// Closed-form Gorenstein classification of torus(m,n), symmetric in
/// `(m, n)`; `None` when `mn` is odd (no perfect matchings).
pub fn hokan_predicate(m: usize, n: usize) -> Option<bool> {
    if (m * n) % 2 == 1 {
        return None;
    }
    let one_way = |m: usize, n: usize| ((m == 1 || m.is_multiple_of(2)) && n.is_multiple_of(2)) || (m, n) == (2, 3) || (m, n) == (2, 5);
    Some(one_way(m, n) || one_way(n, m))
}

/// Closed-form dimension of the perfect matching polytope of grid(m,n) or
/// torus(m,n), where a formula is known. Torus cases are tried in both
/// orientations; when both sides are even and larger than 2 the `mn + 1`
/// case applies.
pub fn dimension_formula_for(family: Family, m: usize, n: usize) -> Option<usize> {
    match family {
        Family::Grid if (m * n).is_multiple_of(2) => Some((m - 1) * (n - 1)),
        Family::Torus => torus_dimension(m, n).or_else(|| torus_dimension(n, m)),
        _ => None,
    }
}

fn torus_dimension(m: usize, n: usize) -> Option<usize> {
    let even = |k: usize| k.is_multiple_of(2);
    if m == 2 && n > 2 && even(n) {
        Some(n + 1)
    } else if m > 2 && n > 2 && even(m) && even(n) {
        Some(m * n + 1)
    } else if m == 2 && n > 1 && !even(n) {
        Some(n)
    } else if m > 2 && even(m) && n == 1 {
        Some(1)
    } else if m > 2 && even(m) && n > 1 {
        Some(m * n)
    } else {
        None
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// JUnit XML: one test case per report; failures as `<failure>`,
/// inconclusive and not-applicable reports as `<skipped>`.
pub fn to_junit(reports: &[VerificationReport]) -> String {
    let failures = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    let skipped = reports
        .iter()
        .filter(|r| matches!(r.verdict, Verdict::Inconclusive | Verdict::NotApplicable))
        .count();
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<testsuite name=\"pmpoly\" tests=\"{}\" failures=\"{failures}\" skipped=\"{skipped}\">",
        reports.len()
    );
    for r in reports {
        let time = r.runtime_ms.map(|ms| format!(" time=\"{:.3}\"", ms as f64 / 1000.0)).unwrap_or_default();
        let _ = write!(
            out,
            "  <testcase classname=\"{}\" name=\"{}\"{time}",
            xml_escape(&r.check),
            xml_escape(&r.instance)
        );
        match r.verdict {
            Verdict::Pass => out.push_str("/>\n"),
            Verdict::Fail => {
                let msg = format!("computed {} expected {}", r.computed, r.expected);
                let _ = writeln!(
                    out,
                    ">\n    <failure message=\"{}\">{}</failure>\n  </testcase>",
                    xml_escape(&msg),
                    xml_escape(&r.claim)
                );
            }
            Verdict::Inconclusive | Verdict::NotApplicable => {
                let msg = r.note.clone().unwrap_or_default();
                let _ = writeln!(out, ">\n    <skipped message=\"{}\"/>\n  </testcase>", xml_escape(&msg));
            }
        }
    }
    out.push_str("</testsuite>\n");
    out
}
