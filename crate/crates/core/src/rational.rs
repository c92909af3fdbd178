//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Always `"p/q"` with `q >= 1`, integers included (`"3/1"`).
pub fn to_pq(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn from_pq(s: &str) -> Result<Q> {
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let (p, d) = match s.split_once('/') {
        Some((p, d)) => (p.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(p, d))
}

/// Evaluates a coefficient vector (constant term first) at `x`.
pub fn eval_poly(coeffs: &[Q], x: &Q) -> Q {
    coeffs
        .iter()
        .rev()
        .fold(Q::zero(), |acc, c| acc * x + c)
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Serde adapter for `Vec<BigRational>` as a list of `"p/q"` strings.
pub mod pq_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_pq))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| from_pq(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_roundtrip() {
        for (n, d) in [(1, 6), (-11, 6), (3, 1), (0, 5)] {
            let x = q_frac(n, d);
            assert_eq!(from_pq(&to_pq(&x)).unwrap(), x);
        }
        assert_eq!(to_pq(&q_frac(4, 2)), "2/1");
        assert!(from_pq("1/0").is_err());
        assert!(from_pq("a/b").is_err());
    }

    #[test]
    fn horner() {
        // (t^3 + 6t^2 + 11t + 6) / 6 at t = 2 is 10.
        let c = [q(1), q_frac(11, 6), q(1), q_frac(1, 6)];
        assert_eq!(eval_poly(&c, &q(2)), q(10));
    }
}
