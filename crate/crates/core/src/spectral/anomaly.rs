//! Integrated conformal anomaly, the bulk anomaly Lagrangian and the
//! type-A coefficient, all built on the even polynomial
//! `(½+μ)_k (½-μ)_k = Π_{i<k} ((½+i)² - μ²)`.

use alloc::format;
use alloc::vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{spinor_factor, EvalResult, Route};
use crate::dd::{Dd, DD_EPSILON};
use crate::error::{Error, Result};
use crate::exact::{factorial, pochhammer_exact, rat, rational_from_f64, ExactRational};
use crate::poly::RationalPoly;
use crate::precision::{Estimate, PrecisionContext};
use crate::quadrature::integrate_adaptive;

/// `coeff · π^pi_power`, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiRational {
    pub coeff: ExactRational,
    pub pi_power: i32,
}

impl PiRational {
    pub fn to_dd(&self) -> Dd {
        Dd::from_rational(&self.coeff) * Dd::PI.powi(self.pi_power)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_dd().to_f64()
    }
}

fn check_even(op: &'static str, n: u32) -> Result<u32> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::domain(op, format!("n = {n} must be even and positive")));
    }
    Ok(n / 2)
}

fn check_mass(op: &'static str, nu: f64) -> Result<ExactRational> {
    if !(0.0..=0.5).contains(&nu) {
        return Err(Error::domain(op, format!("nu = {nu} outside [0, 1/2]")));
    }
    rational_from_f64(nu)
}

/// `Π_{i<k} ((½+i)² - μ²)` as a polynomial in `μ`.
pub fn pochhammer_product(k: u32) -> RationalPoly {
    (0..k).fold(RationalPoly::one(), |acc, i| {
        let c = rat(2 * i as i64 + 1, 2);
        acc.mul(&RationalPoly::new(vec![&c * &c, BigRational::zero(), -BigRational::one()]))
    })
}

/// The same product evaluated factor by factor, for the quadrature routes.
fn pochhammer_product_dd(k: u32, mu: Dd) -> Dd {
    (0..k).fold(Dd::ONE, |acc, i| {
        let c = Dd::from_f64(0.5 + i as f64);
        acc * (c + mu) * (c - mu)
    })
}

/// `2^{2+⌊n/2⌋} (-1)^{n/2} / n!`
fn anomaly_prefactor(n: u32) -> ExactRational {
    let k = n / 2;
    let mut c = BigRational::new(BigInt::from(4u64 * spinor_factor(n)), factorial(n as u64));
    if k % 2 == 1 {
        c = -c;
    }
    c
}

/// `2^{2+⌊n/2⌋} (-1)^{n/2}/n! · ∫_0^ν (½+μ)_{n/2} (½-μ)_{n/2} dμ` in exact
/// arithmetic, with `ν` taken as the exact value of its binary64 encoding.
pub fn anomaly_integrated_exact(n: u32, nu: f64) -> Result<ExactRational> {
    let k = check_even("anomaly_integrated", n)?;
    let nu = check_mass("anomaly_integrated", nu)?;
    Ok(anomaly_prefactor(n) * pochhammer_product(k).integral_from_zero(&nu))
}

/// The same integral by Gauss–Legendre quadrature.
pub fn anomaly_quadrature(n: u32, nu: f64, ctx: &PrecisionContext) -> Result<EvalResult> {
    let k = check_even("anomaly_quadrature", n)?;
    check_mass("anomaly_quadrature", nu)?;
    let integral = quadrature(k, nu, ctx)?;
    let e = integral.scale(Dd::from_rational(&anomaly_prefactor(n)));
    Ok(EvalResult::from_estimate(e, Route::Quadrature))
}

fn quadrature(k: u32, nu: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    if nu == 0.0 {
        return Ok(Estimate::exact(Dd::ZERO));
    }
    let order = ctx.quadrature_order() as usize;
    integrate_adaptive(
        "anomaly_quadrature",
        0.0,
        nu,
        order,
        order.max(2) * 64,
        ctx.target_rel_error() * 1e-3,
        |mu| Ok(pochhammer_product_dd(k, mu)),
    )
}

fn exact_result(v: &ExactRational) -> EvalResult {
    let d = Dd::from_rational(v);
    let value = d.to_f64();
    EvalResult {
        value,
        abs_error_estimate: (d - Dd::from_f64(value)).to_f64().abs() + DD_EPSILON * value.abs(),
        route: Route::ExactRational,
    }
}

fn cross_check(op: &'static str, n: u32, nu: f64, exact: &EvalResult, quad: &EvalResult, ctx: &PrecisionContext) -> Result<()> {
    let tolerance = 100.0 * ctx.target_rel_error() * exact.value.abs().max(f64::MIN_POSITIVE)
        + exact.abs_error_estimate
        + quad.abs_error_estimate;
    if (exact.value - quad.value).abs() > tolerance {
        return Err(Error::RouteDisagreement {
            op,
            params: format!("n = {n}, nu = {nu}"),
            first: exact.value,
            second: quad.value,
            tolerance,
        });
    }
    Ok(())
}

/// Integrated anomaly for even `n`, exact route, checked against quadrature.
pub fn anomaly_integrated(n: u32, nu: f64, ctx: &PrecisionContext) -> Result<EvalResult> {
    let exact = exact_result(&anomaly_integrated_exact(n, nu)?);
    let quad = anomaly_quadrature(n, nu, ctx)?;
    cross_check("anomaly_integrated", n, nu, &exact, &quad, ctx)?;
    Ok(exact)
}

/// Volume anomaly `L_{n+1} = 2 (-π)^{n/2} / Γ(1 + n/2)`.
pub fn volume_anomaly(n: u32) -> Result<PiRational> {
    let k = check_even("volume_anomaly", n)?;
    let mut coeff = BigRational::new(BigInt::from(2), factorial(k as u64));
    if k % 2 == 1 {
        coeff = -coeff;
    }
    Ok(PiRational { coeff, pi_power: k as i32 })
}

/// `[2/(2π)^{n/2} ∫_0^m (½+μ)_{n/2}(½-μ)_{n/2} dμ / (½)_{n/2}] · L_{n+1}`.
///
/// The powers of π cancel, leaving a rational.
pub fn bulk_anomaly_lagrangian_exact(n: u32, m: f64) -> Result<ExactRational> {
    let k = check_even("bulk_anomaly_lagrangian", n)?;
    let m = check_mass("bulk_anomaly_lagrangian", m)?;
    let integral = pochhammer_product(k).integral_from_zero(&m);
    let lagrangian = BigRational::new(BigInt::from(2), BigInt::one() << k) * integral
        / pochhammer_exact(&rat(1, 2), k);
    let l = volume_anomaly(n)?;
    debug_assert_eq!(l.pi_power, k as i32);
    Ok(lagrangian * l.coeff)
}

pub fn bulk_anomaly_lagrangian(n: u32, m: f64, _ctx: &PrecisionContext) -> Result<EvalResult> {
    Ok(exact_result(&bulk_anomaly_lagrangian_exact(n, m)?))
}

/// `c_k = (-1)^k / (2^{2k} k! (k-1)!)`
fn c_k(k: u32) -> ExactRational {
    let den = (BigInt::one() << (2 * k)) * factorial(k as u64) * factorial(k as u64 - 1);
    let c = BigRational::new(BigInt::one(), den);
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}

/// `4 c_k / (2^k (½)_k)`, the rational part of the type-A prefactor.
fn type_a_prefactor(k: u32) -> ExactRational {
    rat(4, 1) * c_k(k) / BigRational::from_integer(BigInt::one() << k) / pochhammer_exact(&rat(1, 2), k)
}

/// Type-A coefficient `c^{(n)}` as an exact rational multiple of `π^{-n/2}`.
pub fn type_a_coefficient_exact(n: u32) -> Result<PiRational> {
    let k = check_even("type_a_coefficient", n)?;
    let integral = pochhammer_product(k).integral_from_zero(&rat(1, 2));
    let coeff = type_a_prefactor(k) * integral;
    debug_assert!(!coeff.is_zero() && coeff.is_negative() == (k % 2 == 1));
    Ok(PiRational { coeff, pi_power: -(k as i32) })
}

pub fn type_a_coefficient(n: u32, _ctx: &PrecisionContext) -> Result<EvalResult> {
    let p = type_a_coefficient_exact(n)?;
    let d = p.to_dd();
    let value = d.to_f64();
    Ok(EvalResult {
        value,
        abs_error_estimate: (d - Dd::from_f64(value)).to_f64().abs() + 4.0 * DD_EPSILON * value.abs(),
        route: Route::ExactRational,
    })
}

/// Type-A coefficient with the integral done by quadrature.
pub fn type_a_quadrature(n: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    let k = check_even("type_a_quadrature", n)?;
    let integral = quadrature(k, 0.5, ctx)?;
    let scale = Dd::from_rational(&type_a_prefactor(k)) * Dd::PI.powi(-(k as i32));
    Ok(EvalResult::from_estimate(integral.scale(scale), Route::Quadrature))
}
