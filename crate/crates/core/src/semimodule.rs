//! Value semigroups and the Lambda semimodule of a branch with one
//! characteristic pair, t-values, divisorial valuations, an explicit
//! curve realizing each Saito number, Saito-basis checks and the
//! central-chart dicriticality test.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::{
    int, poly_exact_divide, wedge, BivariatePoly, OneForm, PuiseuxParametrization, Rational,
    TruncatedSeries,
};
use crate::error::{Error, Result};

/// Numerical semigroup `<nu0, nu1>` with `gcd(nu0, nu1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    nu0: u64,
    nu1: u64,
    apery: Vec<u64>,
}

impl Semigroup {
    pub fn new(nu0: u64, nu1: u64) -> Result<Self> {
        if nu0 == 0 || nu1 == 0 {
            return Err(Error::InvalidParameters("generators must be positive".into()));
        }
        if nu0.gcd(&nu1) != 1 {
            return Err(Error::InvalidParameters(format!(
                "gcd({nu0}, {nu1}) != 1"
            )));
        }
        // j nu1 for j < nu0 hits every residue class mod nu0 exactly once
        let mut apery = vec![0; nu0 as usize];
        for j in 0..nu0 {
            apery[((j * nu1) % nu0) as usize] = j * nu1;
        }
        Ok(Semigroup { nu0, nu1, apery })
    }

    pub fn generators(&self) -> (u64, u64) {
        (self.nu0, self.nu1)
    }

    /// Smallest element of each residue class mod `nu0`.
    pub fn apery(&self) -> &[u64] {
        &self.apery
    }

    /// Every integer `>= conductor` is in the semigroup.
    pub fn conductor(&self) -> u64 {
        (self.nu0 - 1) * (self.nu1 - 1)
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.apery[(n % self.nu0) as usize]
    }

    /// Membership of `n - shift`, false when `n < shift`.
    pub fn contains_shifted(&self, n: u64, shift: u64) -> bool {
        n >= shift && self.contains(n - shift)
    }
}

pub fn semigroup_member(g: &Semigroup, n: u64) -> bool {
    g.contains(n)
}

/// Minimal generators `lambda_{-1} < lambda_0 < ... < lambda_s` of the
/// Lambda semimodule, computed from values below `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSemimodule {
    pub semigroup: Semigroup,
    pub generators: Vec<u64>,
    pub bound: u32,
}

impl LambdaSemimodule {
    pub fn contains(&self, n: u64) -> bool {
        self.generators
            .iter()
            .any(|&l| self.semigroup.contains_shifted(n, l))
    }
}

/// Pivot exponents of the row-echelon form of a set of series, pivots
/// taken at the lowest exponent. This is the set of orders attained by
/// nonzero linear combinations of the input.
pub fn echelon_orders(rows: &[TruncatedSeries]) -> BTreeSet<u32> {
    let mut pivots: std::collections::BTreeMap<u32, TruncatedSeries> = Default::default();
    for row in rows {
        let mut r = row.clone();
        while let Some(p) = r.order().finite() {
            match pivots.get(&p) {
                Some(piv) => {
                    let c = r.coeff(p) / piv.coeff(p);
                    r = r.sub(&piv.scale(&c));
                }
                None => {
                    pivots.insert(p, r);
                    break;
                }
            }
        }
    }
    pivots.into_keys().collect()
}

/// Monomial 1-forms `x^i y^j dx` and `x^i y^j dy` of divisorial weight
/// below `bound`.
fn monomial_forms(nu0: u32, nu1: u32, bound: u32) -> Vec<OneForm> {
    let mut out = Vec::new();
    for j in 0.. {
        if nu1 * j >= bound {
            break;
        }
        for i in 0.. {
            let w = nu0 * i + nu1 * j;
            if w + nu0 >= bound {
                break;
            }
            out.push(OneForm::raw(
                BivariatePoly::monomial(i, j, int(1)),
                BivariatePoly::zero(),
            ));
            if w + nu1 < bound {
                out.push(OneForm::raw(
                    BivariatePoly::zero(),
                    BivariatePoly::monomial(i, j, int(1)),
                ));
            }
        }
    }
    out
}

/// Lambda semimodule of a branch `x = t^nu0`, `y = t^nu1 + ...` with
/// `nu0 < nu1` coprime. Elements are determined below `bound`, which
/// must be at least `nu0 nu1 + nu0 + nu1` and at most the precision of
/// the parametrization.
pub fn lambda_generators(psi: &PuiseuxParametrization, bound: u32) -> Result<LambdaSemimodule> {
    let nu0 = psi.nu0();
    let nu1 = psi
        .nu1()
        .ok_or_else(|| Error::InvalidParameters("y(t) vanishes to the truncation".into()))?;
    if nu0 < 2 || nu1 <= nu0 || nu0.gcd(&nu1) != 1 {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= nu0 < nu1 coprime, got nu0 = {nu0}, ord y = {nu1}"
        )));
    }
    let required = PuiseuxParametrization::default_trunc(nu0, nu1);
    if bound < required {
        return Err(Error::BoundTooSmall { given: bound, required });
    }
    if psi.trunc() < bound {
        return Err(Error::BoundTooSmall {
            given: psi.trunc(),
            required: bound,
        });
    }
    let forms = monomial_forms(nu0, nu1, bound);
    let max_j = forms
        .iter()
        .flat_map(|w| w.dx.terms().chain(w.dy.terms()).map(|((_, j), _)| j))
        .max()
        .unwrap_or(0);
    let powers = psi.y_powers(max_j);
    let rows: Vec<TruncatedSeries> = forms
        .iter()
        .map(|w| psi.pullback_form_with(w, &powers).truncate(bound - 1))
        .collect();
    let values: BTreeSet<u64> = echelon_orders(&rows)
        .into_iter()
        .map(|o| o as u64 + 1)
        .collect();
    let semigroup = Semigroup::new(nu0 as u64, nu1 as u64)?;
    let mut generators: Vec<u64> = Vec::new();
    for &n in &values {
        if !generators.iter().any(|&l| semigroup.contains_shifted(n, l)) {
            generators.push(n);
        }
    }
    Ok(LambdaSemimodule {
        semigroup,
        generators,
        bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TValueRow {
    pub i: usize,
    pub u: [u64; 2],
    pub t: [u64; 2],
}

impl TValueRow {
    pub fn t_min(&self) -> u64 {
        self.t[0].min(self.t[1])
    }

    pub fn t_max(&self) -> u64 {
        self.t[0].max(self.t[1])
    }
}

/// `u_i*` and `t_i*` for `i = 1, ..., s+1`, starting from `t_0 = nu1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TValueTable {
    pub t0: u64,
    pub rows: Vec<TValueRow>,
}

impl TValueTable {
    /// `t_i`, with `t(0) = nu1`.
    pub fn t(&self, i: usize) -> Option<u64> {
        if i == 0 {
            Some(self.t0)
        } else {
            self.rows.get(i - 1).map(TValueRow::t_min)
        }
    }

    /// `t~_i`.
    pub fn t_tilde(&self, i: usize) -> Option<u64> {
        if i == 0 {
            None
        } else {
            self.rows.get(i - 1).map(TValueRow::t_max)
        }
    }
}

/// `generators` lists `lambda_{-1}, lambda_0, ..., lambda_s`.
pub fn t_values(g: &Semigroup, generators: &[u64]) -> Result<TValueTable> {
    let (nu0, nu1) = g.generators();
    if generators.len() < 2 || generators[0] != nu0 || generators[1] != nu1 {
        return Err(Error::InvalidParameters(format!(
            "generators must start with {nu0}, {nu1}"
        )));
    }
    if generators.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameters("generators must increase".into()));
    }
    let mut rows = Vec::new();
    let mut prev_t = nu1;
    for i in 1..generators.len() {
        let lambda = generators[i];
        // Lambda_{i-2} is generated by generators[0..i]
        let in_prefix =
            |n: u64| generators[..i].iter().any(|&l| g.contains_shifted(n, l));
        let mut u = [0u64; 2];
        for (star, step) in [nu0, nu1].into_iter().enumerate() {
            // Gamma + nu0 contains every integer >= conductor + nu0
            let mut n = 1;
            while !in_prefix(lambda + step * n) {
                n += 1;
            }
            u[star] = lambda + step * n;
        }
        let t = [prev_t + u[0] - lambda, prev_t + u[1] - lambda];
        let row = TValueRow { i, u, t };
        prev_t = row.t_min();
        rows.push(row);
    }
    Ok(TValueTable { t0: nu1, rows })
}

/// `min{nu0 i + nu1 j : h_ij != 0}`.
pub fn divisorial_valuation_poly(h: &BivariatePoly, nu0: u64, nu1: u64) -> Result<u64> {
    h.terms()
        .map(|((i, j), _)| nu0 * i as u64 + nu1 * j as u64)
        .min()
        .ok_or(Error::ZeroInput)
}

/// `min{nu_D(A) + nu0, nu_D(B) + nu1}` for `A dx + B dy`.
pub fn divisorial_valuation_form(w: &OneForm, nu0: u64, nu1: u64) -> Result<u64> {
    let a = divisorial_valuation_poly(&w.dx, nu0, nu1).map(|v| v + nu0);
    let b = divisorial_valuation_poly(&w.dy, nu0, nu1).map(|v| v + nu1);
    match (a, b) {
        (Ok(a), Ok(b)) => Ok(a.min(b)),
        (Ok(v), Err(_)) | (Err(_), Ok(v)) => Ok(v),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Parameters of the explicit branch with Saito number `k`.
fn check_aux_params(nu0: u32, nu1: u32, k: u32) -> Result<()> {
    if nu0 <= 3 {
        return Err(Error::InvalidParameters(format!("need nu0 > 3, got {nu0}")));
    }
    if nu1 <= nu0 || nu0.gcd(&nu1) != 1 {
        return Err(Error::InvalidParameters(format!(
            "need nu0 < nu1 coprime, got ({nu0}, {nu1})"
        )));
    }
    if k < 2 || k > nu0 / 2 {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= k <= {}, got k = {k}",
            nu0 / 2
        )));
    }
    Ok(())
}

/// `gamma = (nu0 - k + 1) nu1 - k nu0`.
pub fn aux_gamma(nu0: u32, nu1: u32, k: u32) -> i64 {
    (nu0 as i64 - k as i64 + 1) * nu1 as i64 - k as i64 * nu0 as i64
}

/// `omega = nu1 x^{k-1} (nu0 x dy - nu1 y dx) - nu0 (gamma - nu1) y^{nu0-k} dy`.
pub fn aux_form(nu0: u32, nu1: u32, k: u32) -> OneForm {
    let (n0, n1) = (nu0 as i64, nu1 as i64);
    let gamma = aux_gamma(nu0, nu1, k);
    let dx = BivariatePoly::monomial(k - 1, 1, int(-n1 * n1));
    let dy = BivariatePoly::from_terms([
        ((k, 0), int(n0 * n1)),
        ((0, nu0 - k), int(-n0 * (gamma - n1))),
    ]);
    OneForm::raw(dx, dy)
}

/// A branch `x = t^nu0`, `y = t^nu1 + t^gamma + sum a_i t^i` (modulo
/// `t^trunc`) invariant by [`aux_form`], together with that form.
///
/// Each `a_i`, `i >= 2 gamma - nu1`, is fixed by cancelling the
/// coefficient of `t^(i + k nu0 - 1)` in the pullback; it depends on the
/// coefficient `Q_{i + k nu0}` of `y^(nu0-k+1)`, which only involves
/// `a_j` with `j < i`.
pub fn build_lemma_aux_curve(
    nu0: u32,
    nu1: u32,
    k: u32,
    trunc: u32,
) -> Result<(PuiseuxParametrization, OneForm)> {
    check_aux_params(nu0, nu1, k)?;
    let required = PuiseuxParametrization::default_trunc(nu0, nu1);
    if trunc < required {
        return Err(Error::BoundTooSmall { given: trunc, required });
    }
    let gamma = aux_gamma(nu0, nu1, k) as u32;
    let m = nu0 - k + 1;
    let kn0 = k * nu0;
    // Q_j is needed up to j = trunc - 1 + k nu0
    let work = trunc + kn0;
    let mut y = TruncatedSeries::from_terms("t", work, [(nu1, int(1)), (gamma, int(1))]);
    let scale = |i: u32| {
        Rational::new(
            ((gamma as i64 - nu1 as i64) * (i + kn0) as i64).into(),
            (nu1 as i64 * (i as i64 - nu1 as i64) * m as i64).into(),
        )
    };
    for i in (2 * gamma - nu1)..trunc {
        let q = y.pow(m).coeff(i + kn0);
        if !q.is_zero() {
            y.set_coeff(i, scale(i) * q);
        }
    }
    let psi = PuiseuxParametrization::new(nu0, y.truncate(trunc));
    Ok((psi, aux_form(nu0, nu1, k)))
}

/// For the explicit curve with Saito number `k`: every monomial 1-form
/// of total degree at most `k - 1` has `nu_D <= k nu1 < k nu1 + nu0`.
pub fn low_degree_forms_below(nu0: u64, nu1: u64, k: u64) -> bool {
    let t_tilde = k * nu1 + nu0;
    (0..k).all(|d| {
        (0..=d).all(|i| {
            let j = d - i;
            let base = nu0 * i + nu1 * j;
            let worst = (base + nu0).max(base + nu1);
            worst <= (d + 1) * nu1 && (d + 1) * nu1 <= k * nu1 && k * nu1 < t_tilde
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoCheck {
    pub is_basis: bool,
    pub wedge: BivariatePoly,
    /// `w1 ^ w2 / f`, when the division is exact.
    pub cofactor: Option<BivariatePoly>,
}

/// Saito's criterion: `w1 ^ w2 = u f dx ^ dy` with `u(0) != 0`.
/// Panics if `f == 0`.
pub fn saito_basis_check(w1: &OneForm, w2: &OneForm, f: &BivariatePoly) -> SaitoCheck {
    let w = wedge(w1, w2);
    let cofactor = poly_exact_divide(&w, f);
    let is_basis = cofactor
        .as_ref()
        .is_some_and(|u| !u.constant_term().is_zero());
    SaitoCheck {
        is_basis,
        wedge: w,
        cofactor,
    }
}

/// `y^{N nu0} - x^{N nu1}`.
pub fn cnab_equation(n: u32, nu0: u32, nu1: u32) -> BivariatePoly {
    BivariatePoly::from_terms([((0, n * nu0), int(1)), ((n * nu1, 0), int(-1))])
}

/// `nu1 y dx - nu0 x dy`.
pub fn euler_form(nu0: u32, nu1: u32) -> OneForm {
    OneForm::raw(
        BivariatePoly::monomial(0, 1, int(nu1 as i64)),
        BivariatePoly::monomial(1, 0, int(-(nu0 as i64))),
    )
}

/// `(nu1 y dx - nu0 x dy, df)` for `f = y^{N nu0} - x^{N nu1}`.
pub fn cnab_basis(n: u32, nu0: u32, nu1: u32) -> (OneForm, OneForm, BivariatePoly) {
    let f = cnab_equation(n, nu0, nu1);
    (euler_form(nu0, nu1), OneForm::differential(&f), f)
}

/// Basis of `(y^nu0 - x^nu1)(x^nu0 - y^nu1)` for `nu0 < nu1`.
pub fn two_component_basis(nu0: u32, nu1: u32) -> (OneForm, OneForm, BivariatePoly) {
    let (a, b) = (nu0, nu1);
    let (a2, b2, ab) = (int((a * a) as i64), int((b * b) as i64), int((a * b) as i64));
    let d = b - a;
    let p = |i: u32, j: u32| BivariatePoly::monomial(i, j, int(1));
    let g1 = &p(0, a) - &p(b, 0); // y^nu0 - x^nu1
    let g2 = &p(a, 0) - &p(0, b); // x^nu0 - y^nu1
    let f = &g1 * &g2;
    let unit = &p(0, 0) - &p(d, d);
    // omega1 = (nu1^2 x^d (y^nu1 - x^nu0) - nu0^2 g1) dx + nu0 nu1 x y^{nu0-1} unit dy
    let w1 = OneForm::raw(
        &(-&g2).mul_monomial((d, 0), &b2) - &g1.scale(&a2),
        unit.mul_monomial((1, a - 1), &ab),
    );
    // omega2 = -nu0 nu1 x^{nu0-1} y unit dx + (nu1^2 y^d g1 - nu0^2 (y^nu1 - x^nu0)) dy
    let w2 = OneForm::raw(
        unit.mul_monomial((a - 1, 1), &(-ab)),
        &g1.mul_monomial((0, d), &b2) + &g2.scale(&a2),
    );
    (w1, w2, f)
}

/// `(nu1^2 - nu0^2)(nu0^2 - nu1^2 x^d y^d)`, `d = nu1 - nu0`.
pub fn two_component_cofactor(nu0: u32, nu1: u32) -> BivariatePoly {
    let (a, b) = (nu0 as i64, nu1 as i64);
    let d = nu1 - nu0;
    BivariatePoly::from_terms([
        ((0, 0), int((b * b - a * a) * a * a)),
        ((d, d), int(-(b * b - a * a) * b * b)),
    ])
}

/// `(y dx - x dy, y dx - x dy + df)` for `f = x^d + y^d`,
/// `d = N - 2k + 2`.
pub fn lines_pair(n: u32, k: u32) -> Result<(OneForm, OneForm, BivariatePoly)> {
    let d = n as i64 - 2 * k as i64 + 2;
    if k < 1 || d < 1 {
        return Err(Error::InvalidParameters(format!(
            "need k >= 1 and N - 2k + 2 >= 1, got N = {n}, k = {k}"
        )));
    }
    let d = d as u32;
    let f = BivariatePoly::from_terms([((d, 0), int(1)), ((0, d), int(1))]);
    let w1 = euler_form(1, 1);
    let w2 = w1.add(&OneForm::differential(&f));
    Ok((w1, w2, f))
}

/// Chart `x = X^{nu0-v} Y^nu0`, `y = X^{nu1-u} Y^nu1` at the central
/// component `Y = 0`, with `u nu0 - v nu1 = 1`, `0 < u < nu1`,
/// `0 <= v < nu0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralChart {
    pub nu0: u32,
    pub nu1: u32,
    pub u: u32,
    pub v: u32,
}

impl CentralChart {
    pub fn new(nu0: u32, nu1: u32) -> Result<Self> {
        if nu0 == 0 || nu1 < 2 || nu0.gcd(&nu1) != 1 {
            return Err(Error::InvalidParameters(format!(
                "need coprime nu0 >= 1 and nu1 >= 2, got ({nu0}, {nu1})"
            )));
        }
        let u = (1..nu1)
            .find(|u| (u * nu0) % nu1 == 1)
            .expect("nu0 is invertible mod nu1");
        let v = (u * nu0 - 1) / nu1;
        debug_assert!(v < nu0);
        Ok(CentralChart { nu0, nu1, u, v })
    }

    /// Monomial images of `x` and `y` as `(X exponent, Y exponent)`.
    pub fn x_image(&self) -> (u32, u32) {
        (self.nu0 - self.v, self.nu0)
    }

    pub fn y_image(&self) -> (u32, u32) {
        (self.nu1 - self.u, self.nu1)
    }

    /// Pullback of `A dx + B dy` as `P dX + Q dY`.
    pub fn pullback(&self, w: &OneForm) -> OneForm {
        let (xa, xb) = self.x_image();
        let (ya, yb) = self.y_image();
        let a = w.dx.substitute_monomials((xa, xb), (ya, yb));
        let b = w.dy.substitute_monomials((xa, xb), (ya, yb));
        let c = |n: u32| int(n as i64);
        // dx = xa X^{xa-1} Y^xb dX + xb X^xa Y^{xb-1} dY, same for dy
        let p = &a.mul_monomial((xa - 1, xb), &c(xa)) + &b.mul_monomial((ya - 1, yb), &c(ya));
        let q = &a.mul_monomial((xa, xb - 1), &c(xb)) + &b.mul_monomial((ya, yb - 1), &c(yb));
        OneForm::raw(p, q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicriticalityReport {
    /// `nu_D(h)`, absent when `h = 0`.
    pub nu_d_h: Option<u64>,
    /// `N nu0 nu1 - 1 - nu0 - nu1`.
    pub bound: i64,
    pub criterion_holds: bool,
    pub chart_dicritical: bool,
}

/// For `eta = df + h (nu1 y dx - nu0 x dy)` with `f = y^{N nu0} - x^{N nu1}`:
/// the valuation criterion on `h`, and an independent chart computation
/// of whether the central component is generically transverse to `eta`.
pub fn central_dicriticality(
    eta: &OneForm,
    h: &BivariatePoly,
    n: u32,
    nu0: u32,
    nu1: u32,
) -> Result<DicriticalityReport> {
    let chart = CentralChart::new(nu0, nu1)?;
    if n == 0 {
        return Err(Error::InvalidParameters("N must be positive".into()));
    }
    let f = cnab_equation(n, nu0, nu1);
    let expected = OneForm::differential(&f).add(&euler_form(nu0, nu1).mul_poly(h));
    if !eta.sub(&expected).is_zero() {
        return Err(Error::Malformed(
            "eta is not df + h (nu1 y dx - nu0 x dy) for the given h".into(),
        ));
    }
    let nu_d_h = if h.is_zero() {
        None
    } else {
        Some(divisorial_valuation_poly(h, nu0 as u64, nu1 as u64)?)
    };
    let bound = (n * nu0 * nu1) as i64 - 1 - nu0 as i64 - nu1 as i64;
    let criterion_holds = nu_d_h.is_some_and(|v| v as i64 <= bound);

    let pulled = chart.pullback(eta);
    let chart_dicritical = if pulled.is_zero() {
        false
    } else {
        let common = [&pulled.dx, &pulled.dy]
            .iter()
            .filter_map(|p| p.y_adic_order())
            .min()
            .unwrap_or(0);
        let p = pulled.dx.div_y_power(common);
        !p.restrict_y_zero().is_zero()
    };
    Ok(DicriticalityReport {
        nu_d_h,
        bound,
        criterion_holds,
        chart_dicritical,
    })
}
