use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{format_rational, is_zero, Rational};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Monomial = (u32, u32);

/// Graded lexicographic order with `x > y`.
fn grlex(a: &Monomial, b: &Monomial) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

/// Polynomial in `x, y` with rational coefficients, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, super::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, super::one())
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree of a nonzero term (the multiplicity at the
    /// origin); `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn leading_term(&self) -> Option<(Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(&m, c)| (m, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if is_zero(c) {
            return Self::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    /// Multiply by the monomial `c x^i y^j`.
    pub fn mul_monomial(&self, (i, j): Monomial, c: &Rational) -> Self {
        if is_zero(c) {
            return Self::zero();
        }
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + i, b + j), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(super::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn diff_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * Rational::from_integer(i.into()))),
        )
    }

    pub fn diff_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * Rational::from_integer(j.into()))),
        )
    }

    /// Substitute monomials for the variables:
    /// `x -> X^xa Y^xb`, `y -> X^ya Y^yb`.
    pub fn substitute_monomials(&self, x_to: Monomial, y_to: Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            (
                (i * x_to.0 + j * y_to.0, i * x_to.1 + j * y_to.1),
                c.clone(),
            )
        }))
    }

    /// Largest `m` such that `y^m` divides the polynomial.
    pub fn y_adic_order(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    /// Divide by `y^m`. Caller guarantees divisibility.
    pub fn div_y_power(&self, m: u32) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j - m), c.clone()))
                .collect(),
        }
    }

    /// Restriction to `y = 0`, as a polynomial in `x` only.
    pub fn restrict_y_zero(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j == 0)
                .map(|(&m, c)| (m, c.clone())),
        )
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &rhs.terms {
                out.add_term((a + i, b + j), c * d);
            }
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(&-super::one())
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| grlex(b.0, a.0));
        for (k, ((i, j), c)) in sorted.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", format_rational(c))?;
            match i {
                0 => {}
                1 => write!(f, "*x")?,
                _ => write!(f, "*x^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*y")?,
                _ => write!(f, "*y^{j}")?,
            }
        }
        Ok(())
    }
}

/// Exact quotient `q` with `w = q * f`, or `None` when `f` does not divide
/// `w` in the polynomial ring.
///
/// Runs leading-term elimination under graded lex (`x > y`). A single
/// divisor divides exactly iff every intermediate leading term is a
/// multiple of `lt(f)`, so the first non-divisible leading term already
/// proves failure.
///
/// Panics if `f` is zero.
pub fn poly_exact_divide(w: &BivariatePoly, f: &BivariatePoly) -> Option<BivariatePoly> {
    let ((fi, fj), fc) = f.leading_term().expect("division by the zero polynomial");
    let fc = fc.clone();
    let mut rem = w.clone();
    let mut quot = BivariatePoly::zero();
    while let Some(((ri, rj), rc)) = rem.leading_term() {
        if ri < fi || rj < fj {
            return None;
        }
        let m = (ri - fi, rj - fj);
        let c = rc / &fc;
        rem = &rem - &f.mul_monomial(m, &c);
        quot.add_term(m, c);
    }
    Some(quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn cusp() -> BivariatePoly {
        // y^2 - x^3
        BivariatePoly::from_terms([((0, 2), int(1)), ((3, 0), int(-1))])
    }

    #[test]
    fn scalar_multiple_divides() {
        let f = cusp();
        let w = f.scale(&int(6));
        assert_eq!(poly_exact_divide(&w, &f), Some(BivariatePoly::constant(int(6))));
    }

    #[test]
    fn nonzero_remainder_fails() {
        let f = BivariatePoly::y();
        let w = &(&BivariatePoly::x() * &f) + &BivariatePoly::constant(int(1));
        assert_eq!(poly_exact_divide(&w, &f), None);
    }

    #[test]
    fn zero_dividend_gives_zero_quotient() {
        assert_eq!(
            poly_exact_divide(&BivariatePoly::zero(), &cusp()),
            Some(BivariatePoly::zero())
        );
    }

    #[test]
    fn leading_term_is_grlex_with_x_first() {
        let p = BivariatePoly::from_terms([((0, 3), int(1)), ((1, 2), int(2)), ((0, 1), int(5))]);
        assert_eq!(p.leading_term().unwrap().0, (1, 2));
        assert_eq!(p.order(), Some(1));
    }

    #[test]
    fn partial_derivatives() {
        let f = cusp();
        assert_eq!(f.diff_x(), BivariatePoly::monomial(2, 0, int(-3)));
        assert_eq!(f.diff_y(), BivariatePoly::monomial(0, 1, int(2)));
    }

    #[test]
    fn monomial_substitution() {
        // x -> X Y^2, y -> X Y^3 on y^2 - x^3
        let g = cusp().substitute_monomials((1, 2), (1, 3));
        assert_eq!(g.coeff(2, 6), int(1));
        assert_eq!(g.coeff(3, 6), int(-1));
        assert_eq!(g.y_adic_order(), Some(6));
    }
}
