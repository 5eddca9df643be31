//! Exact rational thresholds.
//!
//! Every sparsity, density and width comparison in the crate goes through
//! these helpers so that `count <= x * size` is decided on integers, never
//! on floats.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as an exact rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^exp` for any signed exponent.
pub fn pow2(exp: i64) -> Rational {
    let mag = BigInt::one() << exp.unsigned_abs() as usize;
    if exp >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

pub fn pow(base: &Rational, exp: u64) -> Rational {
    let mut result = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

/// Exact square root when `r` is the square of a rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// `size < x^-exp`, for `x` in `(0, 1)`, without building the full power:
/// the loop stops as soon as the running power passes `size`, so paper-scale
/// exponents cost a handful of multiplications.
pub fn below_inverse_power(size: usize, x: &Rational, exp: u64) -> bool {
    assert!(x.is_positive() && *x < Rational::one(), "base must lie in (0, 1)");
    let inv = x.recip();
    let bound = Rational::from_integer(BigInt::from(size));
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= &inv;
        if acc > bound {
            return true;
        }
    }
    acc > bound
}

/// Largest integer `<= r`, saturating at `usize::MAX` and clamping negatives to 0.
pub fn floor_usize(r: &Rational) -> usize {
    if r.is_negative() {
        return 0;
    }
    r.floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Smallest integer `>= r`, saturating at `usize::MAX` and clamping negatives to 0.
pub fn ceil_usize(r: &Rational) -> usize {
    if r.is_negative() {
        return 0;
    }
    r.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// `floor(x * size)`: the largest count that still satisfies `count <= x * size`.
pub fn floor_mul(x: &Rational, size: usize) -> usize {
    if x.is_negative() {
        return 0;
    }
    let prod = x.numer() * BigInt::from(size);
    prod.div_floor(x.denom()).to_usize().unwrap_or(usize::MAX)
}

/// `ceil(x * size)`: the smallest count that satisfies `count >= x * size`.
pub fn ceil_mul(x: &Rational, size: usize) -> usize {
    if x.is_negative() {
        return 0;
    }
    let prod = x.numer() * BigInt::from(size);
    prod.div_ceil(x.denom()).to_usize().unwrap_or(usize::MAX)
}

/// `count <= x * size`, exactly.
pub fn count_le(count: usize, x: &Rational, size: usize) -> bool {
    BigInt::from(count) * x.denom() <= x.numer() * BigInt::from(size)
}

/// `count >= x * size`, exactly.
pub fn count_ge(count: usize, x: &Rational, size: usize) -> bool {
    BigInt::from(count) * x.denom() >= x.numer() * BigInt::from(size)
}

/// `count / size` as a reduced rational (0 when `size == 0`).
pub fn fraction(count: usize, size: usize) -> Rational {
    if size == 0 {
        return Rational::zero();
    }
    Rational::new(BigInt::from(count), BigInt::from(size))
}

/// Canonical `"num/den"` rendering, used for JSON and CSV.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"`, a plain integer, or a finite decimal such as `"0.25"`,
/// always exactly.
pub fn parse(input: &str) -> Result<Rational, ParseRationalError> {
    let s = input.trim();
    let err = |reason| ParseRationalError {
        input: input.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err("bad numerator"))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err("no digits"));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("expected digits"));
    }
    let digits = format!("{whole}{frac}");
    let numer = BigInt::from_str(&digits).map_err(|_| err("bad digits"))?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(numer, denom);
    Ok(if negative { -r } else { r })
}

/// Serde adapter: rationals travel as `"num/den"` strings.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Wrapper that displays a rational as `num/den`.
pub struct Show<'a>(pub &'a Rational);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse("3/12").unwrap(), ratio(1, 4));
        assert_eq!(parse("7").unwrap(), ratio(7, 1));
        assert_eq!(parse("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn format_round_trips() {
        for r in [ratio(1, 4), ratio(-3, 7), ratio(5, 1), pow2(-40)] {
            assert_eq!(parse(&format(&r)).unwrap(), r);
        }
        assert_eq!(format(&ratio(6, 3)), "2/1");
    }

    #[test]
    fn threshold_helpers_are_exact_at_the_boundary() {
        let x = ratio(1, 8);
        assert!(count_le(1, &x, 8));
        assert!(!count_le(2, &x, 8));
        assert!(count_ge(1, &x, 8));
        assert!(!count_ge(1, &x, 9) || count_le(1, &x, 9));
        assert_eq!(floor_mul(&x, 17), 2);
        assert_eq!(ceil_mul(&x, 17), 3);
        assert_eq!(ceil_mul(&x, 16), 2);
    }

    #[test]
    fn powers_and_roots() {
        assert_eq!(pow(&ratio(1, 2), 10), pow2(-10));
        assert_eq!(pow(&ratio(3, 1), 0), ratio(1, 1));
        assert_eq!(sqrt_exact(&ratio(1, 16)), Some(ratio(1, 4)));
        assert_eq!(sqrt_exact(&ratio(1, 8)), None);
        assert_eq!(ceil_usize(&ratio(7, 2)), 4);
        assert_eq!(floor_usize(&ratio(7, 2)), 3);
        assert_eq!(floor_usize(&pow2(200)), usize::MAX);
    }

    #[test]
    fn inverse_power_comparison_stops_early() {
        assert!(below_inverse_power(15, &ratio(1, 2), 4));
        assert!(!below_inverse_power(16, &ratio(1, 2), 4));
        assert!(below_inverse_power(1 << 40, &ratio(1, 4), 4_608_000));
        assert!(!below_inverse_power(1, &ratio(1, 3), 0));
    }
}
