use std::collections::BTreeMap;
use std::fmt;

use super::{format_rational, is_zero, Rational};

/// Order of a truncated series.
///
/// `ZeroToTruncation` means every coefficient below the truncation order
/// vanishes. It is never conflated with the truncation order itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesOrder {
    Finite(u32),
    ZeroToTruncation,
}

impl SeriesOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            SeriesOrder::Finite(n) => Some(n),
            SeriesOrder::ZeroToTruncation => None,
        }
    }

    pub fn is_zero_marker(self) -> bool {
        self == SeriesOrder::ZeroToTruncation
    }
}

impl fmt::Display for SeriesOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesOrder::Finite(n) => write!(f, "{n}"),
            SeriesOrder::ZeroToTruncation => write!(f, "inf"),
        }
    }
}

/// Univariate power series known modulo `var^trunc`.
///
/// Coefficients are stored sparsely; exponents `>= trunc` and zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    var: String,
    trunc: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl TruncatedSeries {
    pub fn zero(var: &str, trunc: u32) -> Self {
        TruncatedSeries {
            var: var.to_string(),
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c * var^exp`, dropped if `exp >= trunc`.
    pub fn monomial(var: &str, trunc: u32, exp: u32, c: Rational) -> Self {
        let mut s = Self::zero(var, trunc);
        s.set_coeff(exp, c);
        s
    }

    pub fn from_terms<I>(var: &str, trunc: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut s = Self::zero(var, trunc);
        for (e, c) in terms {
            let updated = s.coeff(e) + c;
            s.set_coeff(e, updated);
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub(crate) fn set_coeff(&mut self, exp: u32, c: Rational) {
        if exp >= self.trunc || is_zero(&c) {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> SeriesOrder {
        match self.coeffs.keys().next() {
            Some(&e) => SeriesOrder::Finite(e),
            None => SeriesOrder::ZeroToTruncation,
        }
    }

    /// Same series known to a lower (or equal) precision.
    pub fn truncate(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        TruncatedSeries {
            var: self.var.clone(),
            trunc,
            coeffs: self
                .coeffs
                .range(..trunc)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.var, other.var);
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (&e, c) in other.coeffs.range(..trunc) {
            let v = out.coeff(e) + c;
            out.set_coeff(e, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-super::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.var, self.trunc);
        if is_zero(c) {
            return out;
        }
        for (&e, v) in &self.coeffs {
            out.coeffs.insert(e, v * c);
        }
        out
    }

    /// Multiply by `var^k`. The truncation order is kept, so the result
    /// is exact modulo `var^trunc`.
    pub fn shift(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.var, self.trunc);
        for (&e, c) in &self.coeffs {
            out.set_coeff(e + k, c.clone());
        }
        out
    }

    /// Product truncated at the smaller of the two precisions.
    ///
    /// When both factors have positive order the product is known to a
    /// higher precision than that, but keeping the minimum is the
    /// conservative choice every caller here relies on.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.var, other.var);
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(&self.var, trunc);
        for (&ea, ca) in self.coeffs.range(..trunc) {
            for (&eb, cb) in other.coeffs.range(..trunc - ea) {
                let e = ea + eb;
                let v = out.coeff(e) + ca * cb;
                out.set_coeff(e, v);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::monomial(&self.var, self.trunc, 0, super::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// d/dvar. Known modulo `var^(trunc-1)`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(&self.var, self.trunc.saturating_sub(1));
        for (&e, c) in &self.coeffs {
            if e > 0 {
                out.set_coeff(e - 1, c * Rational::from_integer(e.into()));
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}){}^{}", format_rational(c), self.var, e)?;
        }
        write!(f, " + O({}^{})", self.var, self.trunc)
    }
}

pub fn series_order(s: &TruncatedSeries) -> SeriesOrder {
    s.order()
}
