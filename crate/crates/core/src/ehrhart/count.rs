//! Exact lattice-point counting in `tP` and `tP°`.
//!
//! The system is rewritten in `y = x - lb`, where `lb` is 1 on edges whose
//! nonnegativity row must hold strictly and 0 otherwise; edges whose
//! nonnegativity row is an implicit equality are fixed to 0 in the interior.
//! A depth-first search assigns the remaining edges in canonical order under
//! per-row residuals. An edge that occurs in a single equality row and in no
//! inequality row is not searched: at each leaf, the `k` such edges of a row
//! with residual `R` contribute `C(R + k - 1, k - 1)` points.

use rayon::prelude::*;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::matching::EdgeVector;
use crate::polytope::{InequalityKind, Region, ScalableHRep};

/// Frontier size handed to the thread pool.
const PARALLEL_FRONTIER: usize = 512;
/// Nodes charged to the shared meter at a time.
const CHARGE_BATCH: u64 = 1024;

#[derive(Debug)]
struct System {
    n_edges: usize,
    lb: Vec<i64>,
    fixed: Vec<bool>,
    infeasible: bool,
    /// Edge id at each search depth.
    order: Vec<usize>,
    var_eq: Vec<Vec<usize>>,
    var_ge: Vec<Vec<usize>>,
    /// Equality row whose residual determines the value at this depth.
    forced: Vec<Option<usize>>,
    /// Equality rows without closed-form edges whose last searched edge sits
    /// at this depth; their residual must be 0 after the assignment.
    close_eq: Vec<Vec<usize>>,
    close_ge: Vec<Vec<usize>>,
    eq_rhs: Vec<i64>,
    /// Closed-form edges per equality row.
    eq_free: Vec<Vec<usize>>,
    ge_rhs: Vec<i64>,
    binom: Vec<Vec<u128>>,
}

#[derive(Debug, Clone)]
struct State {
    res: Vec<i64>,
    gsum: Vec<i64>,
    vals: Vec<i64>,
}

struct Walk<'a> {
    meter: &'a Meter,
    pending: u64,
    stopped: bool,
    overflow: bool,
    visit: Option<&'a mut dyn FnMut(&EdgeVector)>,
}

impl Walk<'_> {
    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending == CHARGE_BATCH {
            self.pending = 0;
            if !self.meter.charge(CHARGE_BATCH) {
                self.stopped = true;
            }
        }
        !self.stopped
    }

    fn flush(&mut self) {
        if self.pending > 0 && !self.meter.charge(self.pending) {
            self.stopped = true;
        }
        self.pending = 0;
    }
}

impl System {
    fn new(h: &ScalableHRep, t: i64, region: Region, closed_form: bool) -> Result<Self> {
        if t < 0 {
            return Err(Error::InvalidArgument(format!("dilation {t} is negative")));
        }
        let n = h.ambient_edges();
        let mut lb = vec![0i64; n];
        let mut fixed = vec![false; n];
        let mut bounded = vec![false; n];
        let mut eq_rows: Vec<(Vec<usize>, i64)> = h
            .equalities()
            .iter()
            .map(|r| (r.support.clone(), r.rhs_mult * t))
            .collect();
        let mut ge_rows: Vec<(Vec<usize>, i64)> = Vec::new();
        for r in h.inequalities() {
            let rhs = r.rhs_mult * t;
            let interior = region == Region::RelativeInterior;
            match (&r.kind, interior, r.implicit_eq) {
                (InequalityKind::Nonnegativity { edge }, _, _) if r.rhs_mult == 0 => {
                    bounded[*edge] = true;
                    if interior && r.implicit_eq {
                        fixed[*edge] = true;
                    } else if interior {
                        lb[*edge] = lb[*edge].max(1);
                    }
                }
                (_, true, true) => eq_rows.push((r.support.clone(), rhs)),
                (_, true, false) => ge_rows.push((r.support.clone(), rhs + 1)),
                (_, false, _) => ge_rows.push((r.support.clone(), rhs)),
            }
        }
        if let Some(e) = bounded.iter().position(|b| !b) {
            return Err(Error::UnboundedVariable(e));
        }
        for e in 0..n {
            if fixed[e] {
                lb[e] = 0;
            }
        }
        let mut infeasible = h.is_empty();
        let shift = |(support, rhs): (Vec<usize>, i64)| {
            let rhs = rhs - support.iter().map(|&k| lb[k]).sum::<i64>();
            let support: Vec<usize> = support.into_iter().filter(|&k| !fixed[k]).collect();
            (support, rhs)
        };
        let eq_rows: Vec<(Vec<usize>, i64)> = eq_rows
            .into_iter()
            .map(shift)
            .filter(|(support, rhs)| {
                if *rhs < 0 || (support.is_empty() && *rhs != 0) {
                    infeasible = true;
                }
                !support.is_empty()
            })
            .collect();
        let ge_rows: Vec<(Vec<usize>, i64)> = ge_rows
            .into_iter()
            .map(shift)
            .filter(|(support, rhs)| {
                if support.is_empty() && *rhs > 0 {
                    infeasible = true;
                }
                *rhs > 0
            })
            .collect();

        let mut in_eq = vec![Vec::new(); n];
        let mut in_ge = vec![Vec::new(); n];
        for (i, (support, _)) in eq_rows.iter().enumerate() {
            for &k in support {
                in_eq[k].push(i);
            }
        }
        for (i, (support, _)) in ge_rows.iter().enumerate() {
            for &k in support {
                in_ge[k].push(i);
            }
        }
        if let Some(e) = (0..n).find(|&e| !fixed[e] && in_eq[e].is_empty()) {
            return Err(Error::UnboundedVariable(e));
        }
        let free = |e: usize| closed_form && in_eq[e].len() == 1 && in_ge[e].is_empty();
        let order: Vec<usize> = (0..n).filter(|&e| !fixed[e] && !free(e)).collect();
        let mut eq_free = vec![Vec::new(); eq_rows.len()];
        for e in (0..n).filter(|&e| !fixed[e] && free(e)) {
            eq_free[in_eq[e][0]].push(e);
        }

        let depth_of = {
            let mut d = vec![usize::MAX; n];
            for (i, &e) in order.iter().enumerate() {
                d[e] = i;
            }
            d
        };
        let mut forced = vec![None; order.len()];
        let mut close_eq = vec![Vec::new(); order.len()];
        let mut close_ge = vec![Vec::new(); order.len()];
        for (i, (support, _)) in eq_rows.iter().enumerate() {
            if !eq_free[i].is_empty() {
                continue;
            }
            let last = support.iter().map(|&k| depth_of[k]).max().unwrap();
            forced[last].get_or_insert(i);
            close_eq[last].push(i);
        }
        for (i, (support, _)) in ge_rows.iter().enumerate() {
            let last = support.iter().map(|&k| depth_of[k]).max().unwrap();
            close_ge[last].push(i);
        }

        let max_rhs = eq_rows.iter().map(|r| r.1).max().unwrap_or(0).max(0) as usize;
        let max_k = eq_free.iter().map(Vec::len).max().unwrap_or(0);
        let binom = pascal(max_rhs + max_k);

        Ok(Self {
            n_edges: n,
            lb,
            fixed,
            infeasible,
            var_eq: order.iter().map(|&e| in_eq[e].clone()).collect(),
            var_ge: order.iter().map(|&e| in_ge[e].clone()).collect(),
            order,
            forced,
            close_eq,
            close_ge,
            eq_rhs: eq_rows.iter().map(|r| r.1).collect(),
            eq_free,
            ge_rhs: ge_rows.iter().map(|r| r.1).collect(),
            binom,
        })
    }

    fn initial(&self) -> State {
        State {
            res: self.eq_rhs.clone(),
            gsum: vec![0; self.ge_rhs.len()],
            vals: vec![0; self.order.len()],
        }
    }

    /// Admissible value range at `depth`, or `None` when empty.
    fn range(&self, depth: usize, st: &State) -> Option<(i64, i64)> {
        let hi = self.var_eq[depth].iter().map(|&r| st.res[r]).min().unwrap();
        match self.forced[depth] {
            Some(r) if st.res[r] <= hi => Some((st.res[r], st.res[r])),
            Some(_) => None,
            None => Some((0, hi)),
        }
    }

    fn assign(&self, depth: usize, st: &mut State, v: i64) -> bool {
        st.vals[depth] = v;
        if v != 0 {
            for &r in &self.var_eq[depth] {
                st.res[r] -= v;
            }
            for &r in &self.var_ge[depth] {
                st.gsum[r] += v;
            }
        }
        self.close_eq[depth].iter().all(|&r| st.res[r] == 0)
            && self.close_ge[depth].iter().all(|&r| st.gsum[r] >= self.ge_rhs[r])
    }

    fn unassign(&self, depth: usize, st: &mut State, v: i64) {
        if v != 0 {
            for &r in &self.var_eq[depth] {
                st.res[r] += v;
            }
            for &r in &self.var_ge[depth] {
                st.gsum[r] -= v;
            }
        }
    }

    /// Number of completions of a full assignment of the searched edges.
    fn leaf_weight(&self, st: &State) -> Option<u128> {
        let mut w: u128 = 1;
        for (r, free) in self.eq_free.iter().enumerate() {
            let k = free.len();
            if k > 0 {
                w = w.checked_mul(self.binom[st.res[r] as usize + k - 1][k - 1])?;
            }
        }
        Some(w)
    }

    fn point(&self, st: &State) -> EdgeVector {
        let mut x = self.lb.clone();
        for (i, &e) in self.order.iter().enumerate() {
            x[e] += st.vals[i];
        }
        debug_assert!(self.eq_free.iter().all(Vec::is_empty));
        debug_assert!((0..self.n_edges).all(|e| !self.fixed[e] || x[e] == 0));
        EdgeVector(x)
    }

    fn descend(&self, depth: usize, st: &mut State, walk: &mut Walk<'_>) -> u128 {
        if !walk.tick() {
            return 0;
        }
        if depth == self.order.len() {
            if let Some(visit) = walk.visit.as_mut() {
                visit(&self.point(st));
            }
            return match self.leaf_weight(st) {
                Some(w) => w,
                None => {
                    walk.overflow = true;
                    walk.stopped = true;
                    0
                }
            };
        }
        let Some((lo, hi)) = self.range(depth, st) else {
            return 0;
        };
        let mut total: u128 = 0;
        for v in lo..=hi {
            if self.assign(depth, st, v) {
                let sub = self.descend(depth + 1, st, walk);
                match total.checked_add(sub) {
                    Some(x) => total = x,
                    None => {
                        walk.overflow = true;
                        walk.stopped = true;
                    }
                }
            }
            self.unassign(depth, st, v);
            if walk.stopped {
                break;
            }
        }
        total
    }

    /// Expands the search tree breadth-first until it has at least `target`
    /// open nodes or every node is a leaf.
    fn frontier(&self, target: usize) -> Vec<(usize, State)> {
        let mut nodes = vec![(0usize, self.initial())];
        loop {
            if nodes.len() >= target || nodes.iter().all(|(d, _)| *d == self.order.len()) {
                return nodes;
            }
            let mut next = Vec::new();
            for (depth, mut st) in nodes {
                if depth == self.order.len() {
                    next.push((depth, st));
                    continue;
                }
                let Some((lo, hi)) = self.range(depth, &st) else {
                    continue;
                };
                for v in lo..=hi {
                    if self.assign(depth, &mut st, v) {
                        next.push((depth + 1, st.clone()));
                    }
                    self.unassign(depth, &mut st, v);
                }
            }
            if next.is_empty() {
                return next;
            }
            nodes = next;
        }
    }
}

fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![1u128; i + 1];
        for j in 1..i {
            row[j] = rows[i - 1][j - 1].saturating_add(rows[i - 1][j]);
        }
        rows.push(row);
    }
    rows
}

fn finish(total: u128, meter: &Meter, overflow: bool) -> Result<u64> {
    if overflow {
        return Err(Error::Overflow);
    }
    let partial = u64::try_from(total).map_err(|_| Error::Overflow)?;
    if meter.tripped() {
        return Err(Error::BudgetExhausted {
            nodes: meter.nodes(),
            partial,
        });
    }
    Ok(partial)
}

/// `#(tP ∩ Z^E)` or `#(tP° ∩ Z^E)`, searched in parallel.
///
/// An exhausted budget yields [`Error::BudgetExhausted`] carrying the number
/// of points found before the search stopped.
pub fn count_lattice_points(h: &ScalableHRep, t: i64, region: Region, budget: &Budget) -> Result<u64> {
    let sys = System::new(h, t, region, true)?;
    if sys.infeasible {
        return Ok(0);
    }
    let meter = Meter::new(*budget);
    let nodes = sys.frontier(PARALLEL_FRONTIER);
    let results: Vec<(u128, bool)> = nodes
        .into_par_iter()
        .map(|(depth, mut st)| {
            let mut walk = Walk {
                meter: &meter,
                pending: 0,
                stopped: false,
                overflow: false,
                visit: None,
            };
            let c = sys.descend(depth, &mut st, &mut walk);
            walk.flush();
            (c, walk.overflow)
        })
        .collect();
    let mut total: u128 = 0;
    let mut overflow = false;
    for (c, o) in results {
        overflow |= o;
        match total.checked_add(c) {
            Some(x) => total = x,
            None => overflow = true,
        }
    }
    finish(total, &meter, overflow)
}

/// Calls `visit` on every lattice point of `tP` (or `tP°`) in canonical
/// lexicographic order of the searched edges. Sequential.
pub fn for_each_lattice_point(
    h: &ScalableHRep,
    t: i64,
    region: Region,
    budget: &Budget,
    visit: &mut dyn FnMut(&EdgeVector),
) -> Result<u64> {
    let sys = System::new(h, t, region, false)?;
    if sys.infeasible {
        return Ok(0);
    }
    let meter = Meter::new(*budget);
    let mut st = sys.initial();
    let mut walk = Walk {
        meter: &meter,
        pending: 0,
        stopped: false,
        overflow: false,
        visit: Some(visit),
    };
    let total = sys.descend(0, &mut st, &mut walk);
    walk.flush();
    let overflow = walk.overflow;
    finish(total, &meter, overflow)
}

pub fn lattice_points(h: &ScalableHRep, t: i64, region: Region, budget: &Budget) -> Result<Vec<EdgeVector>> {
    let mut out = Vec::new();
    for_each_lattice_point(h, t, region, budget, &mut |x| out.push(x.clone()))?;
    Ok(out)
}
