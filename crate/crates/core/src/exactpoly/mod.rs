//! Exact rational arithmetic and polynomial algebra.
//!
//! Every exact computation in the crate runs over [`Rational`]. Univariate
//! polynomials are dense ascending coefficient vectors; bivariate polynomials
//! are stored as a list of λ-polynomials, one per power of the outer variable
//! (`t = w²` or `w` itself, see [`Var`]).

mod bipoly;
mod factor;
mod gcd;
mod resultant;
mod unipoly;

pub use bipoly::{BiPoly, PolyDoc, Var};
pub use factor::{factor_over_rationals, subsets, RationalFactorization};
pub use gcd::{gcd_in_lambda, lambda_content};
pub use resultant::{discriminant_in_lambda, resultant_in_lambda, sylvester_det};
pub use unipoly::UniPoly;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse the text form `"p/q"` or `"p"`, with an optional leading minus
/// (ASCII `-` or U+2212).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let trimmed = s.trim();
    let normalized = trimmed.replace('\u{2212}', "-");
    if normalized.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (num, den) = match normalized.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (normalized.as_str(), "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {trimmed:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {trimmed:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {trimmed:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` when the denominator is one, else `"p/q"`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Fall back on a scaled quotient for huge numerators/denominators.
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift >= 0 {
            Rational::new(x.numer().clone(), x.denom().clone() << shift as usize)
        } else {
            Rational::new(x.numer().clone() << (-shift) as usize, x.denom().clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/7").unwrap(), ratio(3, 7));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4));
        assert_eq!(parse_rational("\u{2212}2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 6/3 ").unwrap(), rat(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(0)), "0");
        assert_eq!(format_rational(&rat(5)), "5");
    }

    #[test]
    fn to_f64_handles_huge_values() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((rational_to_f64(&big) - 10.0).abs() < 1e-9);
        assert_eq!(rational_to_f64(&ratio(1, 4)), 0.25);
    }
}
