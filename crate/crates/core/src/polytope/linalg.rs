//! Exact rank and null-space computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Q;

/// Rank of an integer matrix by fraction-free elimination. Each reduced row
/// is divided by the gcd of its entries to keep numbers small.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for row in rows {
        let mut r: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        for (pc, b) in &basis {
            if r[*pc].is_zero() {
                continue;
            }
            let f = r[*pc].clone();
            let p = b[*pc].clone();
            for (x, y) in r.iter_mut().zip(b) {
                *x = &*x * &p - &f * y;
            }
            normalize(&mut r);
        }
        if let Some(pc) = r.iter().position(|x| !x.is_zero()) {
            basis.push((pc, r));
        }
    }
    basis.len()
}

fn normalize(r: &mut [BigInt]) {
    let g = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in r.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Basis of `{x : A x = 0}` from the reduced row echelon form of `A`.
pub fn nullspace(rows: &[Vec<Q>], n_cols: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (pivot_row, row_i) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in row_i.iter_mut().zip(pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n_cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n_cols];
            v[f] = Q::from_integer(1.into());
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (first nonzero entry positive).
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    normalize(&mut out);
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}
