//! Arbitrary-precision rationals and their canonical string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `"p/q"` string with `q >= 1`, always including the denominator.
pub fn to_pq(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_pq(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Returns the value as `i64` when it is an integer that fits.
pub fn as_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_roundtrip() {
        for (n, d) in [(0, 1), (3, 1), (-1, 2), (7, -21)] {
            let x = qf(n, d);
            assert_eq!(parse_pq(&to_pq(&x)), Some(x));
        }
        assert_eq!(to_pq(&qf(2, 4)), "1/2");
        assert_eq!(to_pq(&q(-3)), "-3/1");
        assert_eq!(parse_pq("1/0"), None);
    }
}
