//! Boundary and bulk determinants, Dirac determinants on `S^n`,
//! F-coefficients and the large-dimension scan.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{spinor_factor, EvalResult, Route, SpectralConfig};
use crate::barnes::{half_decomposition, log_barnes_gamma_est, log_barnes_gamma_reduced, BarnesPoint};
use crate::dd::{Dd, DD_EPSILON};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, ExactRational};
use crate::hurwitz::{hurwitz_zeta_est, hurwitz_zeta_sderiv_est};
use crate::precision::{Estimate, PrecisionContext};

fn lbg(n: u32, z: f64, ctx: &PrecisionContext) -> Result<Estimate> {
    log_barnes_gamma_est(&BarnesPoint::new(n, z)?, ctx)
}

fn boundary_prefactor(n: u32) -> Dd {
    Dd::from_f64((2 * spinor_factor(n)) as f64)
}

/// `2^{1+⌊n/2⌋} log[Γ_{n+1}((n+1)/2+ν) / Γ_{n+1}((n+1)/2-ν)]`.
///
/// At `ν = 1/2` the ladder relation collapses the quotient to
/// `-2^{1+⌊n/2⌋} log Γ_n(n/2)`.
pub fn boundary_log_det(cfg: &SpectralConfig, ctx: &PrecisionContext) -> Result<EvalResult> {
    boundary_log_det_formal(cfg.n(), cfg.nu(), ctx)
}

/// [`boundary_log_det`] for any `ν` in `[-1/2, 1/2]`; odd in `ν`.
pub fn boundary_log_det_formal(n: u32, nu: f64, ctx: &PrecisionContext) -> Result<EvalResult> {
    if n == 0 {
        return Err(Error::domain("boundary_log_det", "dimension n must be >= 1"));
    }
    if !(nu.abs() <= 0.5) {
        return Err(Error::domain("boundary_log_det", format!("nu = {nu} outside [-1/2, 1/2]")));
    }
    let pre = boundary_prefactor(n);
    let e = if nu == 0.0 {
        Estimate::exact(Dd::ZERO)
    } else if nu.abs() == 0.5 {
        let v = lbg(n, n as f64 / 2.0, ctx)?.scale(-pre);
        if nu < 0.0 {
            -v
        } else {
            v
        }
    } else {
        let center = (n + 1) as f64 / 2.0;
        let plus = lbg(n + 1, center + nu, ctx)?;
        let minus = lbg(n + 1, center - nu, ctx)?;
        (plus - minus).scale(pre)
    };
    Ok(EvalResult::from_estimate(e, Route::ClosedForm))
}

/// `log(det₊/det₋) = -2^{1+⌊n/2⌋} log[Γ_{n+1}((n+1)/2+m) / Γ_{n+1}((n+1)/2-m)]`.
///
/// Assembled from Pascal expansions over `(0, 1]`, a call path disjoint
/// from [`boundary_log_det`]; the two sum to zero.
pub fn bulk_log_det_ratio(cfg: &SpectralConfig, ctx: &PrecisionContext) -> Result<EvalResult> {
    let n = cfg.n();
    let center = (n + 1) as f64 / 2.0;
    let plus = log_barnes_gamma_reduced(n + 1, center + cfg.nu(), ctx)?;
    let minus = log_barnes_gamma_reduced(n + 1, center - cfg.nu(), ctx)?;
    let e = (plus - minus).scale(-boundary_prefactor(n));
    Ok(EvalResult::from_estimate(e, Route::ClosedForm))
}

/// `-log det D²` on `S^n`, equal to `4 · 2^{⌊n/2⌋} · log Γ_n(n/2)`.
pub fn dirac_det_log(n: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    if n == 0 {
        return Err(Error::domain("dirac_det_log", "dimension n must be >= 1"));
    }
    let e = lbg(n, n as f64 / 2.0, ctx)?.scale(Dd::from_f64((4 * spinor_factor(n)) as f64));
    Ok(EvalResult::from_estimate(e, Route::ClosedForm))
}

/// Exact reduction of the F-coefficient for odd `n`:
/// `F = log2_coeff · log 2 + Σ_p zeta_odd[p] · ζ(2p+1)/π^{2p}
///      + Σ_(k, c) in remainder c · ζ'(-k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FDecomposition {
    pub log2_coeff: ExactRational,
    /// Indexed by `p`; entry 0 is always zero.
    pub zeta_odd: Vec<ExactRational>,
    /// `ζ'(-k)` terms with `k = 0` or `k` odd, empty for every order checked.
    pub remainder: Vec<(u32, ExactRational)>,
}

/// Both routes of [`f_coefficient`], with the exact reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct FCoefficientRoutes {
    pub generic: EvalResult,
    pub decomposed: EvalResult,
    pub decomposition: FDecomposition,
}

fn check_odd(op: &'static str, n: u32) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::domain(op, format!("n = {n} must be odd")));
    }
    Ok(())
}

/// `log Γ_n(m + ½) = Σ_l (-1)^l C(m, l) log Γ_{n-l}(½)` combined with the
/// half-integer reduction of each `log Γ_j(½)`, then scaled by `2^{1+⌊n/2⌋}`.
pub fn f_decomposition(n: u32) -> Result<FDecomposition> {
    check_odd("f_coefficient", n)?;
    let m = (n - 1) / 2;
    let mut zeta = alloc::vec![BigRational::zero(); n as usize];
    let mut log2 = BigRational::zero();
    for l in 0..=m {
        let mut c = BigRational::from_integer(binomial(m as u64, l as u64));
        if l % 2 == 1 {
            c = -c;
        }
        let h = half_decomposition(n - l)?;
        log2 += &c * &h.log2_coeff;
        for (k, z) in h.zeta_coeffs.iter().enumerate() {
            zeta[k] += &c * z;
        }
    }
    let scale = BigRational::from_integer(BigInt::from(2 * spinor_factor(n)));
    log2 *= &scale;
    let mut zeta_odd = alloc::vec![BigRational::zero(); n as usize / 2 + 1];
    let mut remainder = Vec::new();
    for (k, c) in zeta.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c * &scale;
        if k >= 2 && k % 2 == 0 {
            // ζ'(-2p) = (-1)^p (2p)! / 2^{1+2p} · ζ(2p+1)/π^{2p}
            let p = k / 2;
            let mut r = BigRational::new(factorial(k as u64), BigInt::one() << (k + 1));
            if p % 2 == 1 {
                r = -r;
            }
            zeta_odd[p] += c * r;
        } else {
            remainder.push((k as u32, c));
        }
    }
    Ok(FDecomposition { log2_coeff: log2, zeta_odd, remainder })
}

fn evaluate_decomposition(d: &FDecomposition, ctx: &PrecisionContext) -> Result<Estimate> {
    let log2 = Dd::from_rational(&d.log2_coeff) * Dd::LN2;
    let mut acc = Estimate::new(log2, DD_EPSILON * log2.hi.abs());
    for (p, c) in d.zeta_odd.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let z = hurwitz_zeta_est((2 * p + 1) as f64, 1.0, ctx)?;
        let scale = Dd::from_rational(c) / Dd::PI.powi(2 * p as i32);
        acc = acc + z.scale(scale);
    }
    for (k, c) in &d.remainder {
        let z = hurwitz_zeta_sderiv_est(*k, 1.0, ctx)?;
        acc = acc + z.scale(Dd::from_rational(c));
    }
    Ok(acc)
}

/// Generic Barnes value and half-integer decomposition of
/// `F = 2 · 2^{⌊n/2⌋} log Γ_n(n/2)` for odd `n`.
pub fn f_coefficient_routes(n: u32, ctx: &PrecisionContext) -> Result<FCoefficientRoutes> {
    check_odd("f_coefficient", n)?;
    let generic = lbg(n, n as f64 / 2.0, ctx)?.scale(Dd::from_f64((2 * spinor_factor(n)) as f64));
    let decomposition = f_decomposition(n)?;
    let decomposed = evaluate_decomposition(&decomposition, ctx)?;
    Ok(FCoefficientRoutes {
        generic: EvalResult::from_estimate(generic, Route::ClosedForm),
        decomposed: EvalResult::from_estimate(decomposed, Route::ExactRational),
        decomposition,
    })
}

/// F-coefficient of a free Dirac fermion on `S^n`, `n` odd. Fails with a
/// route disagreement when the two routes differ beyond
/// `100 · target · |F|` plus their error estimates.
pub fn f_coefficient(n: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    let r = f_coefficient_routes(n, ctx)?;
    let tolerance = 100.0 * ctx.target_rel_error() * r.generic.value.abs()
        + r.generic.abs_error_estimate
        + r.decomposed.abs_error_estimate;
    if (r.generic.value - r.decomposed.value).abs() > tolerance {
        return Err(Error::RouteDisagreement {
            op: "f_coefficient",
            params: format!("n = {n}"),
            first: r.generic.value,
            second: r.decomposed.value,
            tolerance,
        });
    }
    Ok(r.generic)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanEntry {
    pub n: u32,
    /// `log det D²`
    pub log_det: f64,
    pub det: f64,
    pub abs_error: f64,
}

/// Determinants for `n = 1..=n_max` with tail diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    /// First dimension of the tail window.
    pub tail_start: u32,
    /// `|log det|` strictly decreasing across the whole tail window.
    pub tail_strictly_decreasing: bool,
    /// Dimensions `n` in the tail with `|log det(n)| >= |log det(n-1)|`.
    pub tail_violations: Vec<u32>,
    /// `|log det|` strictly decreasing along odd `n` and along even `n`
    /// separately within the tail.
    pub parity_classes_decreasing: bool,
}

impl ScanReport {
    pub fn last(&self) -> &ScanEntry {
        self.entries.last().expect("scan is non-empty")
    }
}

pub const SCAN_TAIL_START: u32 = 5;

/// `det D²(S^n) = exp(log det D²)` for `n = 1..=n_max`. Fails with
/// precision exhaustion once `|log det|` sinks below its error estimate.
pub fn bar_schopka_scan(n_max: u32, ctx: &PrecisionContext) -> Result<ScanReport> {
    if n_max < 3 {
        return Err(Error::domain("bar_schopka_scan", format!("n_max = {n_max} must be >= 3")));
    }
    let mut entries = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let r = dirac_det_log(n, ctx)?;
        if r.value.abs() <= r.abs_error_estimate {
            return Err(Error::PrecisionExhausted {
                op: "bar_schopka_scan",
                params: format!("n = {n}"),
                value: r.value,
                abs_error: r.abs_error_estimate,
            });
        }
        let log_det = -r.value;
        entries.push(ScanEntry {
            n,
            log_det,
            det: libm::exp(log_det),
            abs_error: r.abs_error_estimate,
        });
    }
    let mag = |n: u32| entries[n as usize - 1].log_det.abs();
    let tail_violations: Vec<u32> = (SCAN_TAIL_START + 1..=n_max).filter(|&n| mag(n) >= mag(n - 1)).collect();
    let parity_classes_decreasing = (SCAN_TAIL_START + 2..=n_max).all(|n| mag(n) < mag(n - 2));
    Ok(ScanReport {
        tail_start: SCAN_TAIL_START,
        tail_strictly_decreasing: tail_violations.is_empty(),
        tail_violations,
        parity_classes_decreasing,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn circle_determinant_is_four() {
        let r = dirac_det_log(1, &ctx()).unwrap();
        assert!((r.value + 2.0 * core::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn boundary_endpoint_matches_generic_path() {
        // ν = 1/2 uses the ladder; ν slightly below uses the plain quotient.
        for n in 1..=6 {
            let a = boundary_log_det_formal(n, 0.5, &ctx()).unwrap().value;
            let b = boundary_log_det_formal(n, 0.5 - 1e-9, &ctx()).unwrap().value;
            assert!((a - b).abs() < 1e-7, "n = {n}: {a} vs {b}");
        }
    }

    #[test]
    fn holographic_sign_identity() {
        for n in 1..=5 {
            for nu in [0.1, 0.25, 0.5] {
                let cfg = SpectralConfig::new(n, nu).unwrap();
                let b = boundary_log_det(&cfg, &ctx()).unwrap().value;
                let k = bulk_log_det_ratio(&cfg, &ctx()).unwrap().value;
                assert!((b + k).abs() <= 1e-12 * b.abs().max(1e-3), "n = {n}, nu = {nu}");
            }
        }
    }

    #[test]
    fn f_decomposition_for_three() {
        let d = f_decomposition(3).unwrap();
        assert_eq!(d.log2_coeff, rat(1, 4));
        assert_eq!(d.zeta_odd[1], rat(3, 8));
        assert!(d.remainder.is_empty());
        let d1 = f_decomposition(1).unwrap();
        assert_eq!(d1.log2_coeff, rat(-1, 1));
    }

    #[test]
    fn f_routes_agree() {
        for n in [1, 3, 5, 7, 9] {
            let r = f_coefficient_routes(n, &ctx()).unwrap();
            assert!(r.decomposition.remainder.is_empty(), "n = {n}");
            let (a, b) = (r.generic.value, r.decomposed.value);
            assert!((a - b).abs() <= 1e-10 * a.abs(), "n = {n}: {a} vs {b}");
        }
    }
}
