use multigamma::barnes::{
    ladder_check, ladder_tolerance, log_barnes_gamma_est, pascal_expand_est, special_value_half_est,
    special_value_one_est, special_value_one_rising_est, BarnesPoint,
};
use multigamma::exact::{bernoulli_table, binomial, rational_from_f64};
use multigamma::hurwitz::{hurwitz_zeta_est, hurwitz_zeta_sderiv_est};
use multigamma::richardson::extrapolate;
use multigamma::spectral::{
    anomaly_integrated_exact, boundary_log_det, boundary_log_det_formal, bulk_anomaly_lagrangian_exact,
    bulk_log_det_ratio, degeneracy, SpectralConfig,
};
use multigamma::{Dd, PrecisionContext};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn lbg(n: u32, z: f64) -> f64 {
    log_barnes_gamma_est(&BarnesPoint::new(n, z).unwrap(), &ctx()).unwrap().to_f64()
}

/// `B_m(x) = Σ_j C(m, j) B_j x^{m-j}`
fn bernoulli_poly(m: usize, x: &BigRational) -> BigRational {
    let t = bernoulli_table();
    (0..=m).fold(BigRational::zero(), |acc, j| {
        let mut p = BigRational::from_integer(BigInt::from(1));
        for _ in 0..m - j {
            p *= x;
        }
        acc + BigRational::from_integer(binomial(m as u64, j as u64)) * &t[j] * p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hurwitz_shift(s in -6.0f64..8.0, a in 0.05f64..6.0) {
        prop_assume!((s - 1.0).abs() > 1e-3);
        let c = ctx();
        let lhs = hurwitz_zeta_est(s, a, &c).unwrap();
        let rhs = hurwitz_zeta_est(s, a + 1.0, &c).unwrap();
        let diff = (lhs.value - rhs.value).to_f64();
        let want = libm::pow(a, -s);
        let scale = lhs.to_f64().abs().max(rhs.to_f64().abs()).max(want.abs());
        prop_assert!((diff - want).abs() <= 1e-12 * scale, "{diff} vs {want}");
    }

    #[test]
    fn derivative_shift(k in 0u32..20, a in 0.05f64..6.0) {
        // ζ'(-k, a+1) = ζ'(-k, a) + a^k log a
        let c = ctx();
        let lo = hurwitz_zeta_sderiv_est(k, a, &c).unwrap();
        let hi = hurwitz_zeta_sderiv_est(k, a + 1.0, &c).unwrap();
        let term = Dd::from_f64(a).powi(k as i32) * Dd::from_f64(a).ln();
        let defect = (hi.value - lo.value - term).to_f64().abs();
        let scale = hi.to_f64().abs().max(lo.to_f64().abs()).max(term.to_f64().abs()).max(1e-300);
        prop_assert!(defect <= 1e-12 * scale, "defect {defect:e} at scale {scale:e}");
    }

    #[test]
    fn bernoulli_polynomial_values(k in 0usize..20, a in 0.05f64..5.0) {
        // ζ(-k, a) = -B_{k+1}(a) / (k+1)
        let z = hurwitz_zeta_est(-(k as f64), a, &ctx()).unwrap().to_f64();
        let x = rational_from_f64(a).unwrap();
        let want = (-bernoulli_poly(k + 1, &x) / BigRational::from_integer(BigInt::from(k + 1))).to_f64().unwrap();
        prop_assert!((z - want).abs() <= 1e-13 * want.abs().max(1e-30), "{z} vs {want}");
    }

    #[test]
    fn ladder_on_grid(n in 1u32..=8, z in 0.05f64..4.0) {
        let c = ctx();
        let defect = ladder_check(n, z, &c).unwrap();
        prop_assert!(defect.abs() <= ladder_tolerance(n, z, &c).unwrap());
        prop_assert!(defect.abs() < 1e-10);
    }

    #[test]
    fn pascal_matches_direct(n in 1u32..=8, m_frac in 0.0f64..1.0, z in 0.05f64..1.0) {
        let m = (m_frac * n as f64) as i64;
        let via = pascal_expand_est(n, m, z, &ctx()).unwrap().to_f64();
        let direct = lbg(n, m as f64 + z);
        prop_assert!((via - direct).abs() <= 1e-11 * direct.abs().max(1.0), "{via} vs {direct}");
    }

    #[test]
    fn boundary_is_odd_in_nu(n in 1u32..=8, nu in 0.0f64..=0.5) {
        let c = ctx();
        let p = boundary_log_det_formal(n, nu, &c).unwrap().value;
        let m = boundary_log_det_formal(n, -nu, &c).unwrap().value;
        prop_assert!((p + m).abs() <= 1e-13 * p.abs().max(1e-300) + 1e-300);
    }

    #[test]
    fn holographic_identity(n in 1u32..=8, nu in 1e-3f64..=0.5) {
        let c = ctx();
        let cfg = SpectralConfig::new(n, nu).unwrap();
        let b = boundary_log_det(&cfg, &c).unwrap();
        let k = bulk_log_det_ratio(&cfg, &c).unwrap();
        prop_assert!((b.value + k.value).abs() <= 1e-12, "{} vs {}", b.value, k.value);
    }

    #[test]
    fn anomaly_routes_exact(k in 1u32..=5, nu in 0.0f64..=0.5) {
        let n = 2 * k;
        prop_assert_eq!(anomaly_integrated_exact(n, nu).unwrap(), bulk_anomaly_lagrangian_exact(n, nu).unwrap());
    }
}

#[test]
fn deep_negative_order_is_accurate_or_refused() {
    for k in 20..=40usize {
        let a = 2.1333335547686816;
        match hurwitz_zeta_est(-(k as f64), a, &ctx()) {
            Ok(e) => {
                let x = rational_from_f64(a).unwrap();
                let want = (-bernoulli_poly(k + 1, &x) / BigRational::from_integer(BigInt::from(k + 1))).to_f64().unwrap();
                assert!((e.to_f64() - want).abs() <= 1e-12 * want.abs(), "k = {k}");
            }
            Err(err) => assert_eq!(err.op(), "hurwitz_zeta"),
        }
    }
}

#[test]
fn normalization_anchor() {
    for i in 1..=20 {
        let z = 0.25 * i as f64;
        let got = libm::exp(lbg(1, z)) * libm::sqrt(2.0 * core::f64::consts::PI);
        let want = libm::tgamma(z);
        assert!(((got - want) / want).abs() < 1e-13, "z = {z}: {got} vs {want}");
    }
}

#[test]
fn zeta_derivative_by_richardson() {
    // central differences in s, extrapolated in h² with ratio 4
    let c = ctx();
    for (k, a) in [(0u32, 0.5), (2, 1.3), (5, 2.0)] {
        let s = -(k as f64);
        let samples: Vec<Dd> = (0..6)
            .map(|i| {
                let h = 0.05 / libm::pow(2.0, i as f64);
                let up = hurwitz_zeta_est(s + h, a, &c).unwrap().value;
                let down = hurwitz_zeta_est(s - h, a, &c).unwrap().value;
                (up - down) / Dd::from_f64(2.0 * h)
            })
            .collect();
        let fd = extrapolate(&samples, 4.0, 4).value.to_f64();
        let exact = hurwitz_zeta_sderiv_est(k, a, &c).unwrap().to_f64();
        assert!((fd - exact).abs() < 1e-11 * exact.abs().max(1.0), "k = {k}: {fd} vs {exact}");
    }
}

#[test]
fn special_value_routes() {
    let c = ctx();
    for n in 1..=10 {
        let one = special_value_one_est(n, &c).unwrap().to_f64();
        assert!((one - lbg(n, 1.0)).abs() < 1e-13 * one.abs().max(1.0), "n = {n}");
        let half = special_value_half_est(n, &c).unwrap().to_f64();
        assert!((half - lbg(n, 0.5)).abs() < 1e-12 * half.abs().max(1.0), "n = {n}");
    }
    for n in 1..=8 {
        let rising = special_value_one_rising_est(n, &c).unwrap().to_f64();
        assert!((rising - lbg(n, 1.0)).abs() < 1e-13 * rising.abs().max(1.0), "n = {n}");
    }
}

#[test]
fn degeneracy_recurrence() {
    for n in 1..=12u32 {
        for l in 0..=200u32 {
            assert_eq!(degeneracy(l + 1, n) * BigInt::from(l + 1), degeneracy(l, n) * BigInt::from(l + n));
        }
    }
}
