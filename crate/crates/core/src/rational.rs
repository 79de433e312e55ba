//! Exact rational scalars and a few conveniences around them.

use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used for every predicate and mass.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(v: &Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Canonical text form: `p/q` in lowest terms, `p` for integers.
pub fn format(v: &Rational) -> String {
    alloc::format!("{v}")
}

/// Parses `p`, `-p`, or `p/q`. Zero denominators are rejected.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

pub fn ceil_to_usize(v: &Rational) -> Option<usize> {
    v.ceil().to_integer().to_usize()
}

pub fn floor_to_usize(v: &Rational) -> Option<usize> {
    v.floor().to_integer().to_usize()
}

/// Largest dyadic-friendly rational `r` with `r² ≤ value`, approximated from
/// below. Used for bump radii, which must be rational.
pub fn sqrt_lower_bound(value: &Rational) -> Rational {
    if !value.is_positive() {
        return Rational::zero();
    }
    let approx = sqrt_f64(to_f64(value));
    let mut r = from_f64(approx).unwrap_or_else(Rational::one);
    let shrink = Rational::new(BigInt::from((1u64 << 20) - 1), BigInt::from(1u64 << 20));
    while &(&r * &r) > value {
        r *= &shrink;
    }
    r
}

/// Newton square root; core has no libm.
pub fn sqrt_f64(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let mut r = if x > 1.0 { x } else { 1.0 };
    for _ in 0..200 {
        let next = 0.5 * (r + x / r);
        if (next - r).abs() <= f64::EPSILON * next {
            return next;
        }
        r = next;
    }
    r
}

pub fn vec_from_ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_canonical() {
        assert_eq!(parse("6/4"), Some(frac(3, 2)));
        assert_eq!(format(&parse("6/4").unwrap()), "3/2");
        assert_eq!(format(&parse("-4/2").unwrap()), "-2");
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn sqrt_lower_bound_is_below() {
        for v in [frac(2, 1), frac(1, 3), frac(10_000, 7)] {
            let r = sqrt_lower_bound(&v);
            assert!(&r * &r <= v);
            assert!(to_f64(&r) > 0.999 * to_f64(&v).sqrt());
        }
    }
}
