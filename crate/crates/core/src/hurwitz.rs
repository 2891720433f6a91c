//! Hurwitz zeta `ζ(s, a)` and its s-derivative at non-positive integers.
//!
//! Both come from the Euler–Maclaurin formula
//!
//! ```text
//! ζ(s, a) = Σ_{m<M} (m+a)^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!         + Σ_{j>=1} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1},   N = M + a
//! ```
//!
//! differentiated term by term in `s` for the derivative. Everything runs in
//! double-double; the reported error is the first omitted correction term
//! plus a roundoff bound proportional to the magnitude of the summed terms.

use alloc::format;
use alloc::vec::Vec;

use spin::Once;

use crate::dd::{Dd, DD_EPSILON};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_table, factorial, rat};
use crate::precision::{Estimate, PrecisionContext};

/// Largest `k` accepted by [`ZetaDerivRequest`].
pub const MAX_DERIV_ORDER: u32 = 64;

const MAX_CORRECTIONS: usize = 120;

static EM_COEFFS: Once<Vec<Dd>> = Once::new();
static DIGAMMA_COEFFS: Once<Vec<Dd>> = Once::new();

/// `B_{2j} / (2j)!` for `j = 0 ..= MAX_CORRECTIONS` (index 0 unused).
fn em_coeffs() -> &'static [Dd] {
    EM_COEFFS.call_once(|| {
        let b = bernoulli_table();
        (0..=MAX_CORRECTIONS)
            .map(|j| {
                if j == 0 {
                    Dd::ZERO
                } else {
                    let f = num_rational::BigRational::from_integer(factorial(2 * j as u64));
                    Dd::from_rational(&(&b[2 * j] / f))
                }
            })
            .collect()
    })
}

/// `B_{2j} / (2j)` for the digamma expansion.
fn digamma_coeffs() -> &'static [Dd] {
    DIGAMMA_COEFFS.call_once(|| {
        let b = bernoulli_table();
        (0..=MAX_CORRECTIONS)
            .map(|j| {
                if j == 0 {
                    Dd::ZERO
                } else {
                    Dd::from_rational(&(&b[2 * j] * rat(1, 2 * j as i64)))
                }
            })
            .collect()
    })
}

/// Validated `(k, a)` pair for `ζ'(-k, a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaDerivRequest {
    k: u32,
    a: f64,
}

impl ZetaDerivRequest {
    pub fn new(k: u32, a: f64) -> Result<Self> {
        if k > MAX_DERIV_ORDER {
            return Err(Error::domain(
                "ZetaDerivRequest",
                format!("k = {k} above working range {MAX_DERIV_ORDER}"),
            ));
        }
        check_shift("ZetaDerivRequest", a)?;
        Ok(ZetaDerivRequest { k, a })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<Estimate> {
        hurwitz_zeta_sderiv_est(self.k, self.a, ctx)
    }
}

fn check_shift(op: &'static str, a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("shift a = {a} must be finite and > 0")))
    }
}

#[derive(Clone, Copy)]
enum Mode {
    Value,
    Derivative,
}

/// `x^{-s}`, exact integer powering when `s` is integral.
fn pow_neg(x: Dd, s: f64, int_s: Option<i32>) -> Dd {
    match int_s {
        Some(k) => x.powi(-k),
        None => (x.ln().mul_f64(-s)).exp(),
    }
}

struct EmOutcome {
    value: Dd,
    truncation: f64,
    rounding: f64,
}

fn euler_maclaurin(s: f64, a: f64, cutoff: u32, max_terms: usize, mode: Mode) -> EmOutcome {
    let int_s = if s == libm::trunc(s) && s.abs() < 1e9 {
        Some(s as i32)
    } else {
        None
    };
    let coeffs = em_coeffs();
    let sd = Dd::from_f64(s);
    let mut magnitude = 0.0f64;

    let mut partial = Dd::ZERO;
    for m in 0..cutoff {
        let x = Dd::from_f64(a).add_f64(m as f64);
        let p = pow_neg(x, s, int_s);
        let term = match mode {
            Mode::Value => p,
            Mode::Derivative => -(x.ln() * p),
        };
        magnitude += term.hi.abs();
        partial += term;
    }

    let n = Dd::from_f64(a).add_f64(cutoff as f64);
    let ln_n = n.ln();
    let n_pow = pow_neg(n, s, int_s);
    let sm1 = sd.add_f64(-1.0);
    let (tail, half) = match mode {
        Mode::Value => (n * n_pow / sm1, n_pow.mul_f64(0.5)),
        Mode::Derivative => {
            let t = n * n_pow * (-(ln_n / sm1) - (sm1.sqr()).recip());
            (t, -(ln_n * n_pow).mul_f64(0.5))
        }
    };
    magnitude += tail.hi.abs() + half.hi.abs();

    // q_j = s(s+1)…(s+2j-2) / N^{2j-1}, r_j = d q_j / ds
    let n2 = n.sqr();
    let mut q = sd / n;
    let mut r = n.recip();
    let mut corr = Dd::ZERO;
    let mut prev = f64::INFINITY;
    let mut j = 1usize;
    let truncation = loop {
        let inner = match mode {
            Mode::Value => q,
            Mode::Derivative => r - ln_n * q,
        };
        let term = coeffs[j] * inner * n_pow;
        let size = term.hi.abs();
        if matches!(mode, Mode::Value) && q.is_zero() {
            // s is a non-positive integer: the series has terminated.
            break 0.0;
        }
        if j > 2 && size > prev {
            // Asymptotic divergence: the smallest term bounds the remainder.
            break prev;
        }
        if j >= max_terms {
            break size;
        }
        let sum_now = (partial + tail + half + corr).hi.abs();
        corr += term;
        magnitude += size;
        if size <= DD_EPSILON * 1e-2 * sum_now {
            break size;
        }
        prev = size;
        let f1 = sd.add_f64((2 * j - 1) as f64);
        let f2 = sd.add_f64((2 * j) as f64);
        let f12 = f1 * f2;
        let next_r = (r * f12 + q * sd.mul_f64(2.0).add_f64((4 * j - 1) as f64)) / n2;
        q = q * f12 / n2;
        r = next_r;
        j += 1;
    };

    EmOutcome {
        value: partial + tail + half + corr,
        truncation,
        rounding: 2.0 * DD_EPSILON * magnitude,
    }
}

fn adaptive(
    op: &'static str,
    s: f64,
    a: f64,
    ctx: &PrecisionContext,
    mode: Mode,
) -> Result<Estimate> {
    let target = ctx.target_rel_error();
    let max_terms = (ctx.correction_order() as usize).clamp(2, MAX_CORRECTIONS);
    let mut cutoff = ctx.euler_maclaurin_cutoff();
    loop {
        let out = euler_maclaurin(s, a, cutoff, max_terms, mode);
        let v = out.value.to_f64().abs();
        let err = out.truncation + out.rounding;
        if !out.value.is_finite() {
            return Err(Error::Convergence {
                op,
                params: format!("s = {s}, a = {a}"),
                estimate: f64::INFINITY,
                target,
            });
        }
        // Truncation is pushed down to the roundoff floor; a larger cutoff
        // would only grow the cancellation between partial sum and tail.
        let resolved = out.truncation <= out.rounding.max(DD_EPSILON * v);
        // A value buried in its own roundoff is an exact zero to working
        // precision (e.g. ζ(-2, 1)), not a convergence failure.
        let vanishing = resolved && v <= 1e3 * out.rounding;
        let meets = err <= target * v || vanishing;
        if resolved || cutoff >= ctx.max_cutoff() {
            if meets {
                return Ok(Estimate::new(out.value, err));
            }
            return Err(Error::Convergence {
                op,
                params: format!("s = {s}, a = {a}"),
                estimate: err / v,
                target,
            });
        }
        cutoff = cutoff.saturating_mul(2).min(ctx.max_cutoff());
    }
}

/// `ζ(s, a)` with its error estimate.
pub fn hurwitz_zeta_est(s: f64, a: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    check_shift("hurwitz_zeta", a)?;
    if !s.is_finite() {
        return Err(Error::domain("hurwitz_zeta", format!("s = {s} is not finite")));
    }
    if s == 1.0 {
        return Err(Error::Pole { op: "hurwitz_zeta" });
    }
    adaptive("hurwitz_zeta", s, a, ctx, Mode::Value)
}

/// Hurwitz zeta `ζ(s, a) = Σ_{m>=0} (m+a)^{-s}`, continued to `s != 1`.
pub fn hurwitz_zeta(s: f64, a: f64, ctx: &PrecisionContext) -> Result<f64> {
    hurwitz_zeta_est(s, a, ctx).map(|e| e.to_f64())
}

/// `∂_s ζ(s, a)` at `s = -k` with its error estimate.
pub fn hurwitz_zeta_sderiv_est(k: u32, a: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    check_shift("hurwitz_zeta_sderiv", a)?;
    adaptive("hurwitz_zeta_sderiv", -(k as f64), a, ctx, Mode::Derivative)
}

/// `ζ'(-k, a)`.
pub fn hurwitz_zeta_sderiv(k: u32, a: f64, ctx: &PrecisionContext) -> Result<f64> {
    hurwitz_zeta_sderiv_est(k, a, ctx).map(|e| e.to_f64())
}

/// `ζ'(-2p) = (-1)^p (2p)! / (2^{1+2p} π^{2p}) · ζ(1+2p)`.
pub fn riemann_zeta_deriv_neg_even_est(p: u32, ctx: &PrecisionContext) -> Result<Estimate> {
    if p == 0 {
        return Err(Error::domain("riemann_zeta_deriv_neg_even", "p must be >= 1"));
    }
    let zeta_odd = hurwitz_zeta_est((1 + 2 * p) as f64, 1.0, ctx)?;
    let fact = Dd::from_bigint(&factorial(2 * p as u64));
    let mut c = fact / Dd::PI.powi(2 * p as i32);
    c = c.ldexp(-(1 + 2 * p as i32));
    if p % 2 == 1 {
        c = -c;
    }
    Ok(zeta_odd.scale(c))
}

pub fn riemann_zeta_deriv_neg_even(p: u32, ctx: &PrecisionContext) -> Result<f64> {
    riemann_zeta_deriv_neg_even_est(p, ctx).map(|e| e.to_f64())
}

/// `log Γ(a)` through Lerch's formula `ζ'(0, a) + ½ log 2π`.
pub fn ln_gamma_est(a: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    let z = hurwitz_zeta_sderiv_est(0, a, ctx)?;
    Ok(Estimate::new(z.value + half_ln_two_pi(), z.abs_error))
}

pub(crate) fn half_ln_two_pi() -> Dd {
    Dd::PI.mul_f64(2.0).ln().mul_f64(0.5)
}

/// Digamma `ψ(a)` by Euler–Maclaurin.
pub fn digamma_est(a: Dd, ctx: &PrecisionContext) -> Result<Estimate> {
    if !(a.hi > 0.0) {
        return Err(Error::domain("digamma", format!("a = {} must be > 0", a.to_f64())));
    }
    let coeffs = digamma_coeffs();
    let cutoff = ctx.euler_maclaurin_cutoff().max(16);
    let mut sum = Dd::ZERO;
    let mut magnitude = 0.0;
    for m in 0..cutoff {
        let t = (a.add_f64(m as f64)).recip();
        magnitude += t.hi;
        sum -= t;
    }
    let n = a.add_f64(cutoff as f64);
    let ln_n = n.ln();
    let inv_n2 = n.sqr().recip();
    sum += ln_n - n.recip().mul_f64(0.5);
    magnitude += ln_n.hi.abs();
    let mut pw = inv_n2;
    let mut truncation = f64::INFINITY;
    for c in coeffs.iter().skip(1) {
        let term = *c * pw;
        sum -= term;
        truncation = term.hi.abs();
        if truncation <= DD_EPSILON * 1e-2 * sum.hi.abs() {
            break;
        }
        pw *= inv_n2;
    }
    let err = truncation + 2.0 * DD_EPSILON * magnitude;
    if err > ctx.target_rel_error() * sum.hi.abs().max(1e-300) && err > 1e-25 {
        return Err(Error::Convergence {
            op: "digamma",
            params: format!("a = {}", a.to_f64()),
            estimate: err,
            target: ctx.target_rel_error(),
        });
    }
    Ok(Estimate::new(sum, err))
}
