//! Exact rational scalars.
//!
//! All Gram entries, exponents and coefficients are [`Rational`]s, i.e.
//! arbitrary-precision fractions kept in lowest terms with positive
//! denominator. The text form is `"p/q"`, or `"p"` when `q = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"-p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with(['-', '+']) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text: lowest terms, `"p"` for integers.
pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for values outside f64's direct conversion path.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `r` as an exact integer, if it is one.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().clone())
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse(" 1 / 2 ").unwrap(), frac(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("1/-2").is_err());
        assert!(parse("0.5").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn render_is_lowest_terms() {
        assert_eq!(render(&frac(6, 4)), "3/2");
        assert_eq!(render(&frac(4, 2)), "2");
        assert_eq!(render(&frac(-1, 3)), "-1/3");
        assert_eq!(render(&int(0)), "0");
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [frac(1, 4), frac(5, 6), int(2)];
        assert_eq!(common_denominator(&v), BigInt::from(12));
    }
}
