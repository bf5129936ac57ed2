use std::fmt;

use super::poly::BivariatePoly;

/// Polynomial differential 1-form `A dx + B dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub dx: BivariatePoly,
    pub dy: BivariatePoly,
}

impl OneForm {
    /// Returns `None` when both components vanish.
    pub fn new(dx: BivariatePoly, dy: BivariatePoly) -> Option<Self> {
        if dx.is_zero() && dy.is_zero() {
            None
        } else {
            Some(OneForm { dx, dy })
        }
    }

    /// Build without the nonvanishing check; used for intermediate sums.
    pub(crate) fn raw(dx: BivariatePoly, dy: BivariatePoly) -> Self {
        OneForm { dx, dy }
    }

    pub fn dx_form() -> Self {
        OneForm::raw(BivariatePoly::constant(super::one()), BivariatePoly::zero())
    }

    pub fn dy_form() -> Self {
        OneForm::raw(BivariatePoly::zero(), BivariatePoly::constant(super::one()))
    }

    /// Exterior derivative `dh`.
    pub fn differential(h: &BivariatePoly) -> Self {
        OneForm::raw(h.diff_x(), h.diff_y())
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    /// `h * self`.
    pub fn mul_poly(&self, h: &BivariatePoly) -> Self {
        OneForm::raw(h * &self.dx, h * &self.dy)
    }

    pub fn add(&self, other: &Self) -> Self {
        OneForm::raw(&self.dx + &other.dx, &self.dy + &other.dy)
    }

    pub fn sub(&self, other: &Self) -> Self {
        OneForm::raw(&self.dx - &other.dx, &self.dy - &other.dy)
    }

    /// Multiplicity at the origin: the smallest order of the two
    /// coefficients. `None` for the zero form.
    pub fn multiplicity(&self) -> Option<u32> {
        match (self.dx.order(), self.dy.order()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] dx + [{}] dy", self.dx, self.dy)
    }
}

/// Coefficient of `dx ^ dy` in `w1 ^ w2`, i.e. `A1 B2 - A2 B1`.
pub fn wedge(w1: &OneForm, w2: &OneForm) -> BivariatePoly {
    &(&w1.dx * &w2.dy) - &(&w2.dx * &w1.dy)
}
