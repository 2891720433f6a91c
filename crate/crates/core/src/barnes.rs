//! Barnes' multiple gamma function `Γ_n(z)`.
//!
//! Normalization: `log Γ_n(z) = Σ_{k<n} b_{n,k}(z) ζ'(-k, z)`, which gives
//! `Γ_1(z) = Γ(z) / √(2π)` and the ladder relation
//! `Γ_{n+1}(1+z) = Γ_{n+1}(z) / Γ_n(z)`. The polynomials `b_{n,k}` are the
//! coefficients of `C(x - z + n - 1, n - 1)` expanded in powers of `x`,
//! built exactly from Stirling numbers of the first kind.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use spin::RwLock;

use crate::dd::{Dd, DD_EPSILON};
use crate::error::{Error, Result};
use crate::exact::{
    abs_int, binomial, bernoulli_plus, factorial, rat, rational_from_f64, sign_pow,
    stirling_signed, ExactRational,
};
use crate::hurwitz::{hurwitz_zeta_sderiv_est, MAX_DERIV_ORDER};
use crate::poly::RationalPoly;
use crate::precision::{Estimate, PrecisionContext};

/// Largest order accepted by [`BarnesPoint`]; `ζ'(-k, z)` is needed up to
/// `k = n - 1`. Accuracy is documented for `n <= 30`, `z <= n + 5`.
pub const MAX_ORDER: u32 = MAX_DERIV_ORDER + 1;

static B_ROWS: RwLock<BTreeMap<u32, Arc<[BPolynomial]>>> = RwLock::new(BTreeMap::new());

/// Order and argument of a multiple-gamma evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarnesPoint {
    order: u32,
    z: f64,
}

impl BarnesPoint {
    pub fn new(order: u32, z: f64) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::domain(
                "BarnesPoint",
                format!("order {order} outside 1..={MAX_ORDER}"),
            ));
        }
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::domain("BarnesPoint", format!("argument z = {z} must be > 0")));
        }
        Ok(BarnesPoint { order, z })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// `b_{n,k}(z)` with exact coefficients in ascending powers of `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPolynomial {
    order: u32,
    index: u32,
    poly: RationalPoly,
}

impl BPolynomial {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        self.poly.coeffs()
    }

    pub fn eval(&self, z: &ExactRational) -> ExactRational {
        self.poly.eval(z)
    }
}

fn build_b_poly(n: u32, k: u32) -> BPolynomial {
    // (-1)^{n-1-k} / (n-1)! Σ_{j=k}^{n-1} C(j,k) s(n, j+1) z^{j-k}
    let pref = BigRational::new(sign_pow(n - 1 - k), factorial((n - 1) as u64));
    let coeffs = (k..n)
        .map(|j| {
            let c = binomial(j as u64, k as u64) * stirling_signed(n, (j + 1) as i64);
            &pref * BigRational::from_integer(c)
        })
        .collect();
    BPolynomial {
        order: n,
        index: k,
        poly: RationalPoly::new(coeffs),
    }
}

/// All `b_{n,k}`, `k = 0 ..= n-1`, cached per order.
pub fn b_poly_row(n: u32) -> Result<Arc<[BPolynomial]>> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::domain("b_poly", format!("order {n} outside 1..={MAX_ORDER}")));
    }
    if let Some(row) = B_ROWS.read().get(&n) {
        return Ok(row.clone());
    }
    let row: Arc<[BPolynomial]> = (0..n).map(|k| build_b_poly(n, k)).collect();
    B_ROWS.write().entry(n).or_insert_with(|| row.clone());
    Ok(row)
}

/// The coefficient polynomial `b_{n,k}(z)`.
pub fn b_poly(n: u32, k: i64) -> Result<BPolynomial> {
    if n == 0 || k < 0 || k >= n as i64 {
        return Err(Error::domain("b_poly", format!("need 1 <= n and 0 <= k <= n-1, got n = {n}, k = {k}")));
    }
    Ok(b_poly_row(n)?[k as usize].clone())
}

/// `b_{n,k}(z)` for every `k`, exact.
pub fn b_values(n: u32, z: &ExactRational) -> Result<Vec<ExactRational>> {
    Ok(b_poly_row(n)?.iter().map(|b| b.eval(z)).collect())
}

/// Combines `Σ c_k · ζ'(-k, a)` with exact coefficients.
fn zeta_deriv_combination(
    coeffs: &[ExactRational],
    a: f64,
    ctx: &PrecisionContext,
) -> Result<Estimate> {
    let mut sum = Dd::ZERO;
    let mut err = 0.0;
    let mut magnitude = 0.0;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let zd = hurwitz_zeta_sderiv_est(k as u32, a, ctx)?;
        let cd = Dd::from_rational(c);
        let term = cd * zd.value;
        sum += term;
        magnitude += term.hi.abs();
        err += cd.hi.abs() * zd.abs_error;
    }
    Ok(Estimate::new(sum, err + 4.0 * DD_EPSILON * magnitude))
}

fn check_relative(op: &'static str, params: impl FnOnce() -> alloc::string::String, e: Estimate, allowed: f64, floor: f64) -> Result<Estimate> {
    if e.abs_error > allowed * e.to_f64().abs().max(floor) {
        return Err(Error::Convergence {
            op,
            params: params(),
            estimate: e.rel_error(),
            target: allowed,
        });
    }
    Ok(e)
}

/// `log Γ_n(z)` with error estimate, in double-double.
pub fn log_barnes_gamma_est(p: &BarnesPoint, ctx: &PrecisionContext) -> Result<Estimate> {
    let z = rational_from_f64(p.z)?;
    let b = b_values(p.order, &z)?;
    let e = zeta_deriv_combination(&b, p.z, ctx)?;
    // Values that cancel to (nearly) zero are judged against the size of
    // the largest summand instead.
    let floor = b
        .iter()
        .map(|c| Dd::from_rational(c).hi.abs())
        .fold(0.0, f64::max)
        * 1e-20;
    check_relative(
        "log_barnes_gamma",
        || format!("n = {}, z = {}", p.order, p.z),
        e,
        p.order as f64 * ctx.target_rel_error(),
        floor,
    )
}

/// `log Γ_n(z)`.
pub fn log_barnes_gamma(p: &BarnesPoint, ctx: &PrecisionContext) -> Result<f64> {
    log_barnes_gamma_est(p, ctx).map(|e| e.to_f64())
}

fn lbg(n: u32, z: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    log_barnes_gamma_est(&BarnesPoint::new(n, z)?, ctx)
}

/// Defect of the ladder relation,
/// `log Γ_{n+1}(1+z) - log Γ_{n+1}(z) + log Γ_n(z)`.
pub fn ladder_check(n: u32, z: f64, ctx: &PrecisionContext) -> Result<f64> {
    let upper_shifted = lbg(n + 1, 1.0 + z, ctx)?;
    let upper = lbg(n + 1, z, ctx)?;
    let lower = lbg(n, z, ctx)?;
    Ok((upper_shifted.value - upper.value + lower.value).to_f64())
}

/// Tolerance the ladder defect must meet:
/// `20 (n+1) · target · max(1, |log Γ_{n+1}(z)|)`.
pub fn ladder_tolerance(n: u32, z: f64, ctx: &PrecisionContext) -> Result<f64> {
    let upper = lbg(n + 1, z, ctx)?.to_f64().abs();
    Ok(20.0 * (n as f64 + 1.0) * ctx.target_rel_error() * upper.max(1.0))
}

/// `log Γ_n(m+z) = Σ_{l=0}^{m} (-1)^l C(m,l) log Γ_{n-l}(z)`, `0 <= m <= n-1`.
pub fn pascal_expand_est(n: u32, m: i64, z: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    if n == 0 || m < 0 || m > n as i64 - 1 {
        return Err(Error::domain(
            "pascal_expand",
            format!("shift m = {m} outside 0..={}", n as i64 - 1),
        ));
    }
    if !(z > 0.0) {
        return Err(Error::domain("pascal_expand", format!("z = {z} must be > 0")));
    }
    let m = m as u32;
    let mut acc = Estimate::exact(Dd::ZERO);
    for l in 0..=m {
        let c = binomial(m as u64, l as u64) * sign_pow(l);
        let term = lbg(n - l, z, ctx)?.scale(Dd::from_bigint(&c));
        acc = acc + term;
    }
    Ok(acc)
}

pub fn pascal_expand(n: u32, m: i64, z: f64, ctx: &PrecisionContext) -> Result<f64> {
    pascal_expand_est(n, m, z, ctx).map(|e| e.to_f64())
}

/// `log Γ_n(x)` obtained by writing `x = m + z` with `z` in `(0, 1]` and
/// expanding with the Pascal triangle. Independent of the direct evaluator
/// at `x` itself.
pub fn log_barnes_gamma_reduced(n: u32, x: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("log_barnes_gamma_reduced", format!("x = {x} must be > 0")));
    }
    let mut m = libm::ceil(x) - 1.0;
    let mut z = x - m;
    if z <= 0.0 {
        m -= 1.0;
        z += 1.0;
    }
    pascal_expand_est(n, m as i64, z, ctx)
}

/// `log Γ_n(1) = Σ_k b_{n,k}(1) ζ'(-k)`.
pub fn special_value_one_est(n: u32, ctx: &PrecisionContext) -> Result<Estimate> {
    let b = b_values(n, &BigRational::one())?;
    zeta_deriv_combination(&b, 1.0, ctx)
}

pub fn special_value_one(n: u32, ctx: &PrecisionContext) -> Result<f64> {
    special_value_one_est(n, ctx).map(|e| e.to_f64())
}

/// `log Γ_n(1) = 1/(n-1)! Σ_k |s(n-1, k)| ζ'(-k)`, the rising-factorial form
/// of the coefficients at `z = 1` (with `s(0, 0) = 1`).
pub fn special_value_one_rising_est(n: u32, ctx: &PrecisionContext) -> Result<Estimate> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::domain("special_value_one_rising", format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let denom = factorial((n - 1) as u64);
    let coeffs: Vec<ExactRational> = (0..n)
        .map(|k| BigRational::new(abs_int(&stirling_signed(n - 1, k as i64)), denom.clone()))
        .collect();
    zeta_deriv_combination(&coeffs, 1.0, ctx)
}

/// Exact decomposition of `log Γ_n(1/2)` as
/// `Σ_k zeta_coeffs[k] · ζ'(-k) + log2_coeff · log 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfDecomposition {
    pub zeta_coeffs: Vec<ExactRational>,
    pub log2_coeff: ExactRational,
}

/// Coefficients of the half-integer special value
/// `Σ b_{n,k}(½)(2^{-k} - 1) ζ'(-k) - log 2 Σ b_{n,k}(½) 2^{-k} B_{k+1}/(k+1)`.
///
/// This formula needs `B_1 = +1/2`: it rests on `ζ(-k) = -B_{k+1}/(k+1)`,
/// which at `k = 0` only holds in that convention.
pub fn half_decomposition(n: u32) -> Result<HalfDecomposition> {
    let b = b_values(n, &rat(1, 2))?;
    let mut zeta_coeffs = Vec::with_capacity(b.len());
    let mut log2_coeff = BigRational::zero();
    for (k, bk) in b.iter().enumerate() {
        let two_pow = BigRational::new(BigInt::one(), BigInt::one() << k);
        zeta_coeffs.push(bk * (&two_pow - BigRational::one()));
        let bern = bernoulli_plus(k + 1)? / BigRational::from_integer(BigInt::from(k + 1));
        log2_coeff -= bk * &two_pow * bern;
    }
    Ok(HalfDecomposition {
        zeta_coeffs,
        log2_coeff,
    })
}

/// `log Γ_n(1/2)` through [`half_decomposition`].
pub fn special_value_half_est(n: u32, ctx: &PrecisionContext) -> Result<Estimate> {
    let d = half_decomposition(n)?;
    let zeta_part = zeta_deriv_combination(&d.zeta_coeffs, 1.0, ctx)?;
    let log_part = Dd::from_rational(&d.log2_coeff) * Dd::LN2;
    Ok(Estimate::new(
        zeta_part.value + log_part,
        zeta_part.abs_error + DD_EPSILON * log_part.hi.abs(),
    ))
}

pub fn special_value_half(n: u32, ctx: &PrecisionContext) -> Result<f64> {
    special_value_half_est(n, ctx).map(|e| e.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn b_poly_examples() {
        assert_eq!(b_poly(1, 0).unwrap().coefficients(), &[rat(1, 1)]);
        assert_eq!(b_poly(2, 0).unwrap().coefficients(), &[rat(1, 1), rat(-1, 1)]);
        assert_eq!(b_poly(2, 1).unwrap().coefficients(), &[rat(1, 1)]);
        assert!(b_poly(2, 2).is_err());
        assert!(b_poly(2, -1).is_err());
        assert!(b_poly(0, 0).is_err());
    }

    #[test]
    fn b_poly_degree_bound() {
        for n in 1..=12 {
            for k in 0..n {
                let b = b_poly(n, k as i64).unwrap();
                assert!(b.coefficients().len() <= (n - k) as usize);
            }
        }
    }

    #[test]
    fn b_polys_expand_the_binomial_weight() {
        // Σ_k b_{n,k}(z) (m+z)^k = C(m+n-1, n-1)
        for n in 1..=8u32 {
            let z = rat(3, 7);
            let b = b_values(n, &z).unwrap();
            for m in 0..6i64 {
                let x = &z + rat(m, 1);
                let lhs: BigRational = b
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * crate::exact::rational_pow(&x, k as i32))
                    .fold(BigRational::zero(), |a, t| a + t);
                let rhs = BigRational::from_integer(binomial((m + n as i64 - 1) as u64, (n - 1) as u64));
                assert_eq!(lhs, rhs, "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn order_one_and_two_at_one() {
        let c = ctx();
        let half_ln_2pi = 0.5 * (2.0 * core::f64::consts::PI).ln();
        assert!((log_barnes_gamma(&BarnesPoint::new(1, 1.0).unwrap(), &c).unwrap() + half_ln_2pi).abs() < 1e-15);
        let zeta_m1 = crate::hurwitz::hurwitz_zeta_sderiv(1, 1.0, &c).unwrap();
        let g2 = log_barnes_gamma(&BarnesPoint::new(2, 1.0).unwrap(), &c).unwrap();
        assert!((g2 - zeta_m1).abs() < 1e-16);
    }

    #[test]
    fn point_validation() {
        assert!(BarnesPoint::new(0, 1.0).is_err());
        assert!(BarnesPoint::new(3, 0.0).is_err());
        assert!(BarnesPoint::new(3, f64::NAN).is_err());
        assert!(pascal_expand(3, 3, 0.5, &ctx()).is_err());
        assert!(pascal_expand(3, -1, 0.5, &ctx()).is_err());
    }

    #[test]
    fn pascal_single_term_is_direct() {
        let c = ctx();
        let direct = log_barnes_gamma_est(&BarnesPoint::new(4, 0.7).unwrap(), &c).unwrap();
        let p = pascal_expand_est(4, 0, 0.7, &c).unwrap();
        assert_eq!(direct.value, p.value);
    }

    #[test]
    fn half_value_order_two() {
        // -log2/4 - log2/24 - ζ'(-1)/2
        let c = ctx();
        let zeta_m1 = crate::hurwitz::hurwitz_zeta_sderiv(1, 1.0, &c).unwrap();
        let ln2 = core::f64::consts::LN_2;
        let expected = -ln2 / 4.0 - ln2 / 24.0 - zeta_m1 / 2.0;
        assert!((special_value_half(2, &c).unwrap() - expected).abs() < 1e-15);
        assert!((special_value_half(1, &c).unwrap() + ln2 / 2.0).abs() < 1e-16);
    }
}
