//! Ehrhart polynomials, h*-vectors, codegree and the Gorenstein test.

mod count;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use count::{count_lattice_points, for_each_lattice_point, lattice_points};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matching::EdgeVector;
use crate::polytope::{self, Region, ScalableHRep};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EhrhartProfile {
    pub dim: usize,
    pub counts: BTreeMap<u32, u64>,
    pub interior_counts: BTreeMap<u32, u64>,
    /// Coefficients of `L_P(t)`, constant term first.
    #[serde(with = "rational::pq_vec")]
    pub poly: Vec<Q>,
    pub h_star: Vec<i64>,
    pub degree: usize,
    pub codegree: usize,
    pub gorenstein: bool,
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// The unique polynomial of degree at most `d` through `(t, counts[t])`,
/// `t = 0..=d`, as coefficients (constant term first). Any further points
/// in `counts` must lie on it.
pub fn interpolate(counts: &BTreeMap<u32, u64>, d: usize) -> Result<Vec<Q>> {
    let base: Vec<Q> = (0..=d as u32)
        .map(|t| {
            counts
                .get(&t)
                .map(|&c| rational::q(c as i64))
                .ok_or_else(|| Error::InsufficientData(format!("no count at t = {t}")))
        })
        .collect::<Result<_>>()?;
    // Newton forward differences: p(t) = Σ_k Δ^k L(0) · C(t, k).
    let mut diffs = base.clone();
    let mut leading = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        leading.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut poly = vec![Q::zero(); d + 1];
    // falling = t (t-1) ... (t-k+1), in monomial coefficients.
    let mut falling = vec![rational::q(1)];
    let mut factorial = rational::q(1);
    for (k, dk) in leading.iter().enumerate() {
        if k > 0 {
            factorial *= rational::q(k as i64);
            let shift = rational::q(k as i64 - 1);
            let mut next = vec![Q::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        for (i, c) in falling.iter().enumerate() {
            poly[i] += dk * c / &factorial;
        }
    }
    for (&t, &c) in counts.range(d as u32 + 1..) {
        if rational::eval_poly(&poly, &rational::q(t as i64)) != rational::q(c as i64) {
            return Err(Error::Inconsistent(format!(
                "count {c} at t = {t} does not fit a polynomial of degree {d}"
            )));
        }
    }
    Ok(poly)
}

/// `h_i = Σ_{j=0..i} (-1)^j C(d+1, j) L(i-j)` for `i = 0..=d`, trailing
/// zeros trimmed.
pub fn h_star(counts: &BTreeMap<u32, u64>, d: usize) -> Result<Vec<i64>> {
    let l = |t: usize| {
        counts
            .get(&(t as u32))
            .map(|&c| BigInt::from(c))
            .ok_or_else(|| Error::InsufficientData(format!("no count at t = {t}")))
    };
    let mut h = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut acc = BigInt::zero();
        for j in 0..=i {
            let term = binomial(d + 1, j) * l(i - j)?;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if acc.is_negative() {
            return Err(Error::NotEhrhartSequence(format!("h_{i} = {acc} is negative")));
        }
        h.push(acc.to_i64().ok_or(Error::Overflow)?);
    }
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    if h[0] != 1 {
        return Err(Error::NotEhrhartSequence(format!("h_0 = {}", h[0])));
    }
    Ok(h)
}

pub fn is_palindrome(h: &[i64]) -> bool {
    h.iter().eq(h.iter().rev())
}

/// Full Ehrhart data of the polytope with H-description `h` and the given
/// vertices.
///
/// The codegree is found by scanning interior counts from `t = 1`; it is
/// checked against `d + 1 - s` from the h*-vector, and the interior count at
/// the codegree against `h_s`.
pub fn profile(h: &ScalableHRep, vertices: &[EdgeVector], budget: &Budget) -> Result<EhrhartProfile> {
    if h.is_empty() || vertices.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let dim = polytope::dimension_from_vertices(vertices)?;
    let mut counts = BTreeMap::new();
    for t in 0..=dim as u32 {
        counts.insert(t, count_lattice_points(h, t as i64, Region::Closed, budget)?);
    }
    let poly = interpolate(&counts, dim)?;
    let h_star = h_star(&counts, dim)?;
    let degree = h_star.len() - 1;
    let mut interior_counts = BTreeMap::new();
    let mut codegree = None;
    for t in 1..=dim as u32 + 1 {
        let c = count_lattice_points(h, t as i64, Region::RelativeInterior, budget)?;
        interior_counts.insert(t, c);
        if c > 0 {
            codegree = Some(t as usize);
            break;
        }
    }
    let codegree = codegree
        .ok_or_else(|| Error::Inconsistent(format!("no interior point up to t = {}", dim + 1)))?;
    if codegree != dim + 1 - degree {
        return Err(Error::Inconsistent(format!(
            "codegree {codegree} from interior counts, {} from the h*-vector",
            dim + 1 - degree
        )));
    }
    if interior_counts[&(codegree as u32)] != h_star[degree] as u64 {
        return Err(Error::Inconsistent(format!(
            "interior count {} at the codegree differs from h_s = {}",
            interior_counts[&(codegree as u32)],
            h_star[degree]
        )));
    }
    let gorenstein = is_palindrome(&h_star);
    Ok(EhrhartProfile {
        dim,
        counts,
        interior_counts,
        poly,
        h_star,
        degree,
        codegree,
        gorenstein,
    })
}

impl EhrhartProfile {
    /// `L_P(t)` from the stored polynomial.
    pub fn eval(&self, t: i64) -> Q {
        rational::eval_poly(&self.poly, &rational::q(t))
    }

    /// Adds the interior counts for `t = 1..=to` that are not yet recorded.
    pub fn extend_interior(&mut self, h: &ScalableHRep, to: u32, budget: &Budget) -> Result<()> {
        for t in 1..=to {
            if let std::collections::btree_map::Entry::Vacant(e) = self.interior_counts.entry(t) {
                let c = count_lattice_points(h, t as i64, Region::RelativeInterior, budget)?;
                e.insert(c);
            }
        }
        Ok(())
    }
}

/// Every recorded interior count equals `(-1)^d L_P(-t)`.
pub fn reciprocity_check(p: &EhrhartProfile) -> bool {
    let sign = if p.dim.is_multiple_of(2) { 1 } else { -1 };
    p.interior_counts
        .iter()
        .all(|(&t, &c)| p.eval(-(t as i64)) * rational::q(sign) == rational::q(c as i64))
}

/// `L_{P°}(r) = 1` and `L_P(t - r) = L_{P°}(t)` for `r < t <= t_max`, by
/// direct counting.
pub fn gorenstein_shift_check(
    h: &ScalableHRep,
    p: &EhrhartProfile,
    t_max: u32,
    budget: &Budget,
) -> Result<bool> {
    let r = p.codegree as u32;
    if t_max < r {
        return Err(Error::InvalidArgument(format!(
            "t_max = {t_max} is below the codegree {r}"
        )));
    }
    let interior = |t: u32| match p.interior_counts.get(&t) {
        Some(&c) => Ok(c),
        None => count_lattice_points(h, t as i64, Region::RelativeInterior, budget),
    };
    let closed = |t: u32| match p.counts.get(&t) {
        Some(&c) => Ok(c),
        None => count_lattice_points(h, t as i64, Region::Closed, budget),
    };
    if interior(r)? != 1 {
        return Ok(false);
    }
    for t in r + 1..=t_max {
        if closed(t - r)? != interior(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}
