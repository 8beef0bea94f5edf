//! Arbitrary-precision rationals used for every coefficient in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type ExactScalar = BigRational;

pub fn int(v: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `acc += a·b`, skipping the gcd normalization when all three are integers.
pub fn add_product(acc: &mut ExactScalar, a: &ExactScalar, b: &ExactScalar) {
    if acc.is_integer() && a.is_integer() && b.is_integer() {
        *acc = BigRational::from_integer(acc.numer() + a.numer() * b.numer());
    } else {
        *acc += a * b;
    }
}

/// Renders `"num/den"`, or just `"num"` when the denominator is 1.
pub fn format(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"a"` or `"a/b"`. The result is always reduced.
pub fn parse(s: &str) -> Result<ExactScalar> {
    let bad = || Error::InvalidScalar(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow2(e: usize) -> ExactScalar {
    BigRational::from_integer(BigInt::one() << e)
}

pub fn sign(negative: bool) -> ExactScalar {
    if negative {
        -ExactScalar::one()
    } else {
        ExactScalar::one()
    }
}

pub fn is_nonnegative_integer(x: &ExactScalar) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format(&frac(6, -4)), "-3/2");
        assert_eq!(format(&int(5)), "5");
        assert_eq!(parse("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
