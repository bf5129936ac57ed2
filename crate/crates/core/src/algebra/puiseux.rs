use super::form::OneForm;
use super::poly::BivariatePoly;
use super::series::TruncatedSeries;
use super::{int, Rational};

/// Branch parametrization `x = t^nu0`, `y = y(t)`, with `y(t)` known
/// modulo `t^trunc`.
///
/// Pullbacks of functions are exact modulo `t^trunc`; pullbacks of
/// 1-forms lose one order (through `y'(t)`) and are exact modulo
/// `t^(trunc-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxParametrization {
    nu0: u32,
    y: TruncatedSeries,
}

impl PuiseuxParametrization {
    /// Panics if `nu0 == 0`.
    pub fn new(nu0: u32, y: TruncatedSeries) -> Self {
        assert!(nu0 > 0, "x-exponent must be positive");
        PuiseuxParametrization { nu0, y }
    }

    /// Default precision `nu0 nu1 + nu0 + nu1` for a branch with
    /// semigroup generated by `nu0 < nu1`.
    pub fn default_trunc(nu0: u32, nu1: u32) -> u32 {
        nu0 * nu1 + nu0 + nu1
    }

    pub fn nu0(&self) -> u32 {
        self.nu0
    }

    pub fn y(&self) -> &TruncatedSeries {
        &self.y
    }

    pub fn trunc(&self) -> u32 {
        self.y.trunc()
    }

    /// Order of `y(t)`, when `y` is nonzero modulo the truncation.
    pub fn nu1(&self) -> Option<u32> {
        self.y.order().finite()
    }

    /// `[1, y, y^2, ..., y^max_j]`, each modulo `t^trunc`.
    pub fn y_powers(&self, max_j: u32) -> Vec<TruncatedSeries> {
        let mut out = Vec::with_capacity(max_j as usize + 1);
        out.push(TruncatedSeries::monomial("t", self.trunc(), 0, super::one()));
        for j in 1..=max_j {
            let next = out[j as usize - 1].mul(&self.y);
            out.push(next);
        }
        out
    }

    pub(crate) fn pullback_with(&self, h: &BivariatePoly, powers: &[TruncatedSeries]) -> TruncatedSeries {
        let trunc = self.trunc();
        let mut acc = TruncatedSeries::zero("t", trunc);
        for ((i, j), c) in h.terms() {
            let shift = i * self.nu0;
            if shift >= trunc {
                continue;
            }
            let term = powers[j as usize].shift(shift).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    fn dx_dt(&self) -> TruncatedSeries {
        // d(t^nu0)/dt, exact to any order; keep the form precision
        TruncatedSeries::monomial("t", self.trunc(), self.nu0 - 1, int(self.nu0 as i64))
    }

    pub(crate) fn pullback_form_with(&self, w: &OneForm, powers: &[TruncatedSeries]) -> TruncatedSeries {
        let a = self.pullback_with(&w.dx, powers);
        let b = self.pullback_with(&w.dy, powers);
        let dy_dt = self.y.derivative();
        let out = a.mul(&self.dx_dt()).add(&b.mul(&dy_dt));
        out.truncate(self.trunc().saturating_sub(1))
    }

    fn max_y_degree(polys: &[&BivariatePoly]) -> u32 {
        polys
            .iter()
            .flat_map(|p| p.terms().map(|((_, j), _)| j))
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `t^exp` in `y(t)`.
    pub fn y_coeff(&self, exp: u32) -> Rational {
        self.y.coeff(exp)
    }
}

/// `h(t^nu0, y(t))` modulo `t^trunc`.
pub fn pullback_poly(psi: &PuiseuxParametrization, h: &BivariatePoly) -> TruncatedSeries {
    let powers = psi.y_powers(PuiseuxParametrization::max_y_degree(&[h]));
    psi.pullback_with(h, &powers)
}

/// The `dt` coefficient of `psi^*(A dx + B dy)`, modulo `t^(trunc-1)`.
pub fn pullback_one_form(psi: &PuiseuxParametrization, w: &OneForm) -> TruncatedSeries {
    let powers = psi.y_powers(PuiseuxParametrization::max_y_degree(&[&w.dx, &w.dy]));
    psi.pullback_form_with(w, &powers)
}
