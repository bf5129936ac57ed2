//! Exact arithmetic layer: rationals, truncated series in one variable,
//! bivariate polynomials, polynomial 1-forms and their pullbacks along a
//! Puiseux parametrization.
//!
//! Everything here is immutable once built and free of floating point.

mod form;
mod poly;
mod puiseux;
mod series;

pub use form::{wedge, OneForm};
pub use poly::{poly_exact_divide, BivariatePoly};
pub use puiseux::{pullback_one_form, pullback_poly, PuiseuxParametrization};
pub use series::{series_order, SeriesOrder, TruncatedSeries};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational number with arbitrary precision numerator and denominator.
///
/// The representation is always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Build the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Build the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}

pub(crate) fn one() -> Rational {
    Rational::one()
}

/// Canonical text form: `p` for integers and `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Build a rational from decimal-string numerator and denominator.
pub fn rational_from_parts(num: &str, den: &str) -> Option<Rational> {
    let n: BigInt = num.trim().parse().ok()?;
    let d: BigInt = den.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
