//! Numerical dimensional regularization of the boundary mode sum.
//!
//! At dimension `n' = n - ε` the regularized sum reads
//!
//! `f(ε) = -2^{1+⌊n/2⌋} Γ(-n') ∫_0^ν [T(μ) + T(-μ)] dμ`,
//! `T(μ) = Γ((n'+1)/2 + μ) / Γ((1-n')/2 + μ)`.
//!
//! `g(ε) = ε f(ε)` is analytic at `ε = 0`; its value there is the residue
//! and its slope the finite part. Both come from Richardson extrapolation on
//! a halving grid, the slope through divided differences of `g`.

use alloc::format;
use alloc::vec::Vec;

use super::spinor_factor;
use crate::dd::{Dd, DD_EPSILON};
use crate::error::{Error, Result};
use crate::hurwitz::{digamma_est, hurwitz_zeta_est};
use crate::precision::{Estimate, PrecisionContext};
use crate::quadrature::integrate_adaptive;
use crate::richardson::extrapolate;

/// `1e-2 · 2^{-i}` for `i = 0..=10`, down to about `9.8e-6`.
pub const DEFAULT_EPSILON_GRID: [f64; 11] = [
    1e-2,
    5e-3,
    2.5e-3,
    1.25e-3,
    6.25e-4,
    3.125e-4,
    1.5625e-4,
    7.8125e-5,
    3.90625e-5,
    1.953125e-5,
    9.765625e-6,
];

pub const DEFAULT_EXTRAPOLATION_ORDER: usize = 3;

/// Integrated anomaly per unit residue.
///
/// Near an even integer, `Γ(-n+ε) = 1/(n! ε) + O(1)` and the bracket in the
/// integrand tends to `2 (-1)^{n/2} (½+μ)_{n/2} (½-μ)_{n/2}`, so the residue
/// is `-2^{2+⌊n/2⌋} (-1)^{n/2}/n! ∫_0^ν (½+μ)_{n/2}(½-μ)_{n/2} dμ`, the
/// negative of the integrated anomaly. Matches the exact value `-1/3` at
/// `n = 2, ν = 1/2`.
pub const RESIDUE_TO_ANOMALY: f64 = -1.0;

/// Laurent data of the continued mode sum around `n' = n_center`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationReport {
    pub n_center: u32,
    pub nu: f64,
    /// Coefficient of `1/ε`; zero for odd `n_center`.
    pub residue: f64,
    pub residue_error: f64,
    /// Extrapolated `ε f(ε)` at odd `n_center`, where the pole must cancel.
    pub odd_pole_defect: f64,
    pub finite_part: f64,
    pub finite_error: f64,
    /// Strictly decreasing, all positive.
    pub epsilon_grid: Vec<f64>,
    pub extrapolation_order: usize,
}

impl ContinuationReport {
    /// The residue in anomaly normalization.
    pub fn anomaly(&self) -> f64 {
        RESIDUE_TO_ANOMALY * self.residue
    }
}

/// `log Γ(a + δ) - log Γ(a)` by its Taylor series,
/// `δ ψ(a) + Σ_{m>=1} (-1)^{m+1} ζ(m+1, a) δ^{m+1}/(m+1)`, for `|δ| < a`.
fn ln_gamma_increment(a: Dd, delta: Dd, ctx: &PrecisionContext) -> Result<Dd> {
    let psi = digamma_est(a, ctx)?;
    let mut sum = delta * psi.value;
    let mut power = delta;
    let a64 = a.to_f64();
    for m in 1..200u32 {
        power *= delta;
        let z = hurwitz_zeta_est((m + 1) as f64, a64, ctx)?;
        let mut term = power * z.value / Dd::from_f64((m + 1) as f64);
        if m % 2 == 0 {
            term = -term;
        }
        sum += term;
        if term.hi.abs() <= DD_EPSILON * 1e-2 * sum.hi.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        op: "dimreg_continuation",
        params: format!("log gamma increment at a = {a64}, delta = {}", delta.to_f64()),
        estimate: f64::NAN,
        target: DD_EPSILON,
    })
}

fn sin_small(x: Dd) -> Dd {
    let x2 = x.sqr();
    let mut term = x;
    let mut sum = x;
    for j in 1..30 {
        term = -(term * x2) / Dd::from_f64(((2 * j) * (2 * j + 1)) as f64);
        sum += term;
        if term.hi.abs() <= DD_EPSILON * 1e-2 * sum.hi.abs() {
            break;
        }
    }
    sum
}

/// `Γ(-n + ε) = (-1)^n π / (sin(πε) Γ(n+1-ε))`, `Γ(n+1-ε) = Π_{i=1}^{n}(i-ε) Γ(1-ε)`.
fn gamma_near_pole(n: u32, eps: Dd, ctx: &PrecisionContext) -> Result<Dd> {
    let ln_gamma_one_minus = ln_gamma_increment(Dd::ONE, -eps, ctx)?;
    let mut g = ln_gamma_one_minus.exp();
    for i in 1..=n {
        g *= Dd::from_f64(i as f64) - eps;
    }
    let v = Dd::PI / (sin_small(Dd::PI * eps) * g);
    Ok(if n % 2 == 1 { -v } else { v })
}

/// `T(μ) = Π_{i<n} (B+i) · exp(-(log Γ(A+ε) - log Γ(A)))` with
/// `B = (1-n+ε)/2 + μ`, `A = (n+1-ε)/2 + μ`, using `Γ(B+n) = Γ(A+ε)`.
fn gamma_quotient(n: u32, eps: Dd, mu: Dd, ctx: &PrecisionContext) -> Result<Dd> {
    let half_eps = eps.mul_f64(0.5);
    let b = (Dd::from_f64((1.0 - n as f64) / 2.0) + half_eps) + mu;
    let a = (Dd::from_f64((n as f64 + 1.0) / 2.0) - half_eps) + mu;
    let mut poly = Dd::ONE;
    for i in 0..n {
        poly *= b.add_f64(i as f64);
    }
    let inc = ln_gamma_increment(a, eps, ctx)?;
    Ok(poly * (-inc).exp())
}

/// `f(ε)`, the mode sum continued to dimension `n - ε`.
pub fn regularized_mode_sum(n: u32, nu: f64, eps: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    validate(n, nu)?;
    if !(eps > 0.0 && eps < 0.25) {
        return Err(Error::domain("dimreg_continuation", format!("epsilon = {eps} outside (0, 1/4)")));
    }
    if nu == 0.0 {
        return Ok(Estimate::exact(Dd::ZERO));
    }
    let e = Dd::from_f64(eps);
    let order = ctx.quadrature_order() as usize;
    let integral = integrate_adaptive("dimreg_continuation", 0.0, nu, order, 512, 1e-15, |mu| {
        Ok(gamma_quotient(n, e, mu, ctx)? + gamma_quotient(n, e, -mu, ctx)?)
    })?;
    let pre = gamma_near_pole(n, e, ctx)?.mul_f64(-2.0 * spinor_factor(n) as f64);
    Ok(integral.scale(pre))
}

fn validate(n: u32, nu: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("dimreg_continuation", "dimension n must be >= 1"));
    }
    if !(0.0..=0.5).contains(&nu) {
        return Err(Error::domain("dimreg_continuation", format!("nu = {nu} outside [0, 1/2]")));
    }
    Ok(())
}

/// Residue and finite part with the default grid and order.
pub fn dimreg_continuation(n: u32, nu: f64, ctx: &PrecisionContext) -> Result<ContinuationReport> {
    dimreg_continuation_with(n, nu, &DEFAULT_EPSILON_GRID, DEFAULT_EXTRAPOLATION_ORDER, ctx)
}

/// `grid` must halve at every step. Successive extrapolation orders must
/// agree to `sqrt(target)`, relative to `max(1, |value|)`.
pub fn dimreg_continuation_with(
    n: u32,
    nu: f64,
    grid: &[f64],
    order: usize,
    ctx: &PrecisionContext,
) -> Result<ContinuationReport> {
    validate(n, nu)?;
    let params = || format!("n = {n}, nu = {nu}");
    if order == 0 || grid.len() < order + 2 {
        return Err(Error::Extrapolation {
            op: "dimreg_continuation",
            params: params(),
            detail: format!("{} grid points cannot support order {order}", grid.len()),
        });
    }
    for w in grid.windows(2) {
        if !(w[0] > 0.0 && w[1] > 0.0 && w[1] == w[0] / 2.0) {
            return Err(Error::domain("dimreg_continuation", "epsilon grid must be positive and halve at each step"));
        }
    }
    let mut report = ContinuationReport {
        n_center: n,
        nu,
        residue: 0.0,
        residue_error: 0.0,
        odd_pole_defect: 0.0,
        finite_part: 0.0,
        finite_error: 0.0,
        epsilon_grid: grid.to_vec(),
        extrapolation_order: order,
    };
    if nu == 0.0 {
        return Ok(report);
    }
    let mut g = Vec::with_capacity(grid.len());
    let mut g_err: f64 = 0.0;
    for &eps in grid {
        let f = regularized_mode_sum(n, nu, eps, ctx)?;
        g.push(f.value.mul_f64(eps));
        g_err = g_err.max(f.abs_error * eps);
    }
    let slopes: Vec<Dd> = g
        .windows(2)
        .zip(grid.windows(2))
        .map(|(gw, ew)| (gw[0] - gw[1]) / (Dd::from_f64(ew[0]) - Dd::from_f64(ew[1])))
        .collect();
    let residue = extrapolate(&g, 2.0, order);
    let slope = extrapolate(&slopes, 2.0, order);
    let tolerance = libm::sqrt(ctx.target_rel_error());
    let finest = grid[grid.len() - 1];
    let residue_error = residue.disagreement + g_err;
    let finite_error = slope.disagreement + 4.0 * g_err / finest;
    let r = residue.value.to_f64();
    let fp = slope.value.to_f64();
    if residue_error > tolerance * r.abs().max(1.0) || finite_error > tolerance * fp.abs().max(1.0) {
        return Err(Error::Extrapolation {
            op: "dimreg_continuation",
            params: params(),
            detail: format!(
                "order {order} vs {} differ by {residue_error:e} (residue), {finite_error:e} (finite part)",
                order - 1
            ),
        });
    }
    if n % 2 == 1 {
        if r.abs() > tolerance * fp.abs().max(1.0) {
            return Err(Error::Extrapolation {
                op: "dimreg_continuation",
                params: params(),
                detail: format!("pole at odd n does not cancel, residue {r:e}"),
            });
        }
        report.odd_pole_defect = r;
    } else {
        report.residue = r;
        report.residue_error = residue_error;
    }
    report.finite_part = fp;
    report.finite_error = finite_error;
    Ok(report)
}
