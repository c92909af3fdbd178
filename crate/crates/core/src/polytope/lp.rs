//! Dense two-phase simplex over exact rationals.
//!
//! Problems are in equality form: maximize `c·x` subject to `A x = b`,
//! `x >= 0`. Pivoting follows Bland's rule (lowest eligible column enters,
//! ratio ties leave by lowest basic variable), so runs are reproducible and
//! cannot cycle.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Debug, Clone)]
pub struct StandardLp {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub value: Q,
    pub x: Vec<Q>,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    /// Reduced costs of the current objective (maximization).
    reduced: Vec<Q>,
    value: Q,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
            self.rhs[i] = &self.rhs[i] - &f * &prhs;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for (x, y) in self.reduced.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
            self.value = &self.value + &f * &prhs;
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    fn step(&mut self, allowed: usize) -> Step {
        let Some(c) = (0..allowed).find(|&j| self.reduced[j].is_positive()) else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, Q)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / a;
            best = match best {
                Some((bi, br))
                    if br < ratio || (br == ratio && self.basis[bi] < self.basis[i]) =>
                {
                    Some((bi, br))
                }
                _ => Some((i, ratio)),
            };
        }
        match best {
            None => Step::Unbounded,
            Some((r, _)) => {
                self.pivot(r, c);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self, allowed: usize) -> Result<()> {
        loop {
            match self.step(allowed) {
                Step::Optimal => return Ok(()),
                Step::Unbounded => return Err(Error::Unbounded),
                Step::Pivoted => {}
            }
        }
    }

    fn set_objective(&mut self, c: &[Q]) {
        let n = self.reduced.len();
        let mut reduced: Vec<Q> = (0..n).map(|j| c.get(j).cloned().unwrap_or_else(Q::zero)).collect();
        let mut value = Q::zero();
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = c.get(bv).cloned().unwrap_or_else(Q::zero);
            if cb.is_zero() {
                continue;
            }
            for (x, y) in reduced.iter_mut().zip(&self.rows[i]) {
                *x = &*x - &cb * y;
            }
            value += &cb * &self.rhs[i];
        }
        self.reduced = reduced;
        self.value = value;
    }
}

/// Phase 1. Returns a tableau whose basis contains no artificial columns
/// (redundant rows are dropped), or `Error::Infeasible`.
fn feasible_tableau(lp: &StandardLp) -> Result<Tableau> {
    let m = lp.a.len();
    let n = lp.c.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, b)) in lp.a.iter().zip(&lp.b).enumerate() {
        debug_assert_eq!(row.len(), n);
        let flip = b.is_negative();
        let mut r: Vec<Q> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Q::from_integer(1.into()) } else { Q::zero() }));
        rows.push(r);
        rhs.push(if flip { -b } else { b.clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        reduced: vec![Q::zero(); n + m],
        value: Q::zero(),
    };
    let phase1: Vec<Q> = (0..n + m)
        .map(|j| if j < n { Q::zero() } else { Q::from_integer((-1).into()) })
        .collect();
    t.set_objective(&phase1);
    t.run(n + m)?;
    if t.value.is_negative() {
        return Err(Error::Infeasible);
    }
    // Drive zero-level artificials out of the basis.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for r in t.rows.iter_mut() {
        r.truncate(n);
    }
    t.reduced.truncate(n);
    Ok(t)
}

pub fn is_feasible(lp: &StandardLp) -> Result<bool> {
    match feasible_tableau(lp) {
        Ok(_) => Ok(true),
        Err(Error::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

pub fn maximize(lp: &StandardLp) -> Result<LpOutcome> {
    let mut t = feasible_tableau(lp)?;
    let n = lp.c.len();
    t.set_objective(&lp.c);
    t.run(n)?;
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs[i].clone();
    }
    Ok(LpOutcome { value: t.value, x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn lp(a: Vec<Vec<i64>>, b: Vec<i64>, c: Vec<i64>) -> StandardLp {
        StandardLp {
            a: a.into_iter().map(|r| r.into_iter().map(q).collect()).collect(),
            b: b.into_iter().map(q).collect(),
            c: c.into_iter().map(q).collect(),
        }
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 2y, x + y + s1 = 4, x + 3y + s2 = 6
        let p = lp(vec![vec![1, 1, 1, 0], vec![1, 3, 0, 1]], vec![4, 6], vec![3, 2, 0, 0]);
        let out = maximize(&p).unwrap();
        assert_eq!(out.value, q(12));
        assert_eq!(out.x[0], q(4));
    }

    #[test]
    fn fractional_optimum() {
        // max x + y, 2x + y + s1 = 2, x + 2y + s2 = 2 -> x = y = 2/3
        let p = lp(vec![vec![2, 1, 1, 0], vec![1, 2, 0, 1]], vec![2, 2], vec![1, 1, 0, 0]);
        let out = maximize(&p).unwrap();
        assert_eq!(out.value, q_frac(4, 3));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(vec![vec![1, 1]], vec![-1], vec![0, 0]);
        assert_eq!(maximize(&p), Err(Error::Infeasible));
        assert!(!is_feasible(&p).unwrap());
        let p = lp(vec![vec![1, -1]], vec![0], vec![1, 0]);
        assert_eq!(maximize(&p), Err(Error::Unbounded));
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let p = lp(vec![vec![1, 1], vec![2, 2]], vec![1, 2], vec![1, 0]);
        let out = maximize(&p).unwrap();
        assert_eq!(out.value, q(1));
    }
}
