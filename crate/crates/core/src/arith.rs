//! Exact arithmetic helpers. Every density comparison in this crate is a
//! comparison of [`Rat`] values; floats never enter decision logic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// `n/d` as a [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as a [`Rat`].
pub fn rat_int(n: usize) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Binomial coefficient, exact.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient as `usize`; panics on overflow (desk scale only).
pub fn binomial_usize(n: usize, k: usize) -> usize {
    use num_traits::ToPrimitive;
    binomial(n, k)
        .to_usize()
        .expect("binomial coefficient out of usize range")
}

/// Smallest integer `>= q`, as usize. `q` must be non-negative.
pub fn ceil_to_usize(q: &Rat) -> usize {
    use num_traits::ToPrimitive;
    assert!(!q.is_negative(), "ceil_to_usize on a negative rational");
    q.ceil()
        .to_integer()
        .to_usize()
        .expect("ceiling out of usize range")
}

/// Largest integer `<= q`, as usize. `q` must be non-negative.
pub fn floor_to_usize(q: &Rat) -> usize {
    use num_traits::ToPrimitive;
    assert!(!q.is_negative(), "floor_to_usize on a negative rational");
    q.floor()
        .to_integer()
        .to_usize()
        .expect("floor out of usize range")
}

/// Serializes a rational as a `{"num": "...", "den": "..."}` pair of decimal
/// strings, the only form reports ever print rationals in.
pub fn rat_to_json(q: &Rat) -> serde_json::Value {
    serde_json::json!({
        "num": q.numer().to_string(),
        "den": q.denom().to_string(),
    })
}

/// Parses `a/b` or `a` into a [`Rat`].
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial_usize(5, 3), 10);
        assert_eq!(binomial_usize(92, 2), 4186);
        assert_eq!(binomial_usize(92, 3), 125580);
        assert_eq!(binomial_usize(4, 0), 1);
        assert_eq!(binomial_usize(3, 5), 0);
    }

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rat("7"), Some(rat(7, 1)));
        assert_eq!(parse_rat(" 39 / 10 "), Some(rat(39, 10)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(ceil_to_usize(&rat(7, 3)), 3);
        assert_eq!(floor_to_usize(&rat(7, 3)), 2);
        assert_eq!(ceil_to_usize(&rat(6, 3)), 2);
    }
}
