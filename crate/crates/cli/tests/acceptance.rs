//! Acceptance criteria 1-10, one PASS/FAIL line each. Exits non-zero if
//! any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use multigamma::barnes::{ladder_check, log_barnes_gamma_est, BarnesPoint};
use multigamma::hurwitz::hurwitz_zeta_sderiv_est;
use multigamma::spectral::{
    anomaly_integrated, anomaly_integrated_exact, bar_schopka_scan, boundary_log_det, bulk_anomaly_lagrangian,
    bulk_anomaly_lagrangian_exact, dimreg_continuation, dirac_det_log, f_coefficient_routes,
    type_a_coefficient_exact, type_a_quadrature, SpectralConfig,
};
use multigamma::PrecisionContext;
use multigamma_cli::SCAN_REGRESSION_THRESHOLD;

type Outcome = Result<String, String>;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

/// 20 points in (0, 5].
fn z_grid() -> impl Iterator<Item = f64> {
    (1..=20).map(|i| 0.25 * i as f64)
}

const NU_GRID: [f64; 6] = [0.05, 0.1, 0.2, 0.25, 0.4, 0.5];

fn lbg(n: u32, z: f64) -> Result<f64, String> {
    let p = BarnesPoint::new(n, z).map_err(|e| e.to_string())?;
    log_barnes_gamma_est(&p, &ctx()).map(|e| e.to_f64()).map_err(|e| e.to_string())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn normalization_anchor() -> Outcome {
    let root = (2.0 * std::f64::consts::PI).sqrt();
    let mut worst: f64 = 0.0;
    for z in z_grid() {
        let got = lbg(1, z)?.exp() * root;
        let r = rel(got, libm::tgamma(z));
        if !(r <= 1e-10) {
            return Err(format!("z = {z}: relative error {r:e}"));
        }
        worst = worst.max(r);
    }
    Ok(format!("worst relative error {worst:.1e} on 20 points"))
}

fn ladder() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        for z in z_grid() {
            let d = ladder_check(n, z, &ctx()).map_err(|e| e.to_string())?.abs();
            if !(d < 1e-10) {
                return Err(format!("n = {n}, z = {z}: defect {d:e}"));
            }
            worst = worst.max(d);
        }
    }
    Ok(format!("worst defect {worst:.1e} for n <= 8 on 20 points"))
}

fn circle() -> Outcome {
    let closed = (-dirac_det_log(1, &ctx()).map_err(|e| e.to_string())?.value).exp();
    // ζ_{D²}(s) = 2 ζ(2s, ½); det = exp(-ζ'_{D²}(0)) = exp(-4 ζ'(0, ½))
    let zd = hurwitz_zeta_sderiv_est(0, 0.5, &ctx()).map_err(|e| e.to_string())?.to_f64();
    let oracle = (-4.0 * zd).exp();
    for (route, det) in [("closed form", closed), ("spectral zeta", oracle)] {
        if !((det - 4.0).abs() <= 1e-12) {
            return Err(format!("{route}: det = {det:.17e}"));
        }
    }
    Ok(format!("closed form {closed:.16}, spectral zeta {oracle:.16}"))
}

fn type_a() -> Outcome {
    for (n, coeff, power) in [(2u32, "-1/12", -1), (4, "11/1440", -2)] {
        let p = type_a_coefficient_exact(n).map_err(|e| e.to_string())?;
        if p.coeff.to_string() != coeff || p.pi_power != power {
            return Err(format!("n = {n}: {} pi^{}", p.coeff, p.pi_power));
        }
        let q = type_a_quadrature(n, &ctx()).map_err(|e| e.to_string())?.value;
        let r = rel(q, p.to_f64());
        if !(r <= 1e-12) {
            return Err(format!("n = {n}: quadrature {q:e} vs exact {:e}", p.to_f64()));
        }
    }
    Ok("-1/(12 pi) and 11/(1440 pi^2); quadrature within 1e-12".into())
}

fn anomaly_cross_route() -> Outcome {
    for n in [2u32, 4, 6, 8] {
        for m in [0.1, 0.25, 0.5] {
            let bulk = bulk_anomaly_lagrangian_exact(n, m).map_err(|e| e.to_string())?;
            let residue = anomaly_integrated_exact(n, m).map_err(|e| e.to_string())?;
            if bulk != residue {
                return Err(format!("n = {n}, m = {m}: {bulk} vs {residue}"));
            }
            let a = bulk_anomaly_lagrangian(n, m, &ctx()).map_err(|e| e.to_string())?.value;
            let b = anomaly_integrated(n, m, &ctx()).map_err(|e| e.to_string())?.value;
            if a != b {
                return Err(format!("n = {n}, m = {m}: rounded values differ"));
            }
        }
    }
    let pinned = anomaly_integrated_exact(2, 0.5).map_err(|e| e.to_string())?;
    if pinned.to_string() != "-1/3" {
        return Err(format!("(n = 2, m = 1/2) gives {pinned}"));
    }
    Ok("12 lattice points equal as rationals; -1/3 at (2, 1/2)".into())
}

fn dimreg() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [1u32, 3, 5] {
        for nu in [0.1, 0.25, 0.5] {
            let r = dimreg_continuation(n, nu, &ctx()).map_err(|e| e.to_string())?;
            let cfg = SpectralConfig::new(n, nu).map_err(|e| e.to_string())?;
            let b = boundary_log_det(&cfg, &ctx()).map_err(|e| e.to_string())?.value;
            let d = (r.finite_part - b).abs();
            if !(d <= 1e-6) {
                return Err(format!("n = {n}, nu = {nu}: finite part {} vs {b}", r.finite_part));
            }
            worst = worst.max(d);
        }
    }
    let mut worst_residue: f64 = 0.0;
    for nu in [0.1, 0.25, 0.5] {
        let r = dimreg_continuation(2, nu, &ctx()).map_err(|e| e.to_string())?;
        let a = anomaly_integrated(2, nu, &ctx()).map_err(|e| e.to_string())?.value;
        let d = (r.anomaly() - a).abs();
        if !(d <= 1e-6) {
            return Err(format!("n = 2, nu = {nu}: calibrated residue {} vs anomaly {a}", r.anomaly()));
        }
        worst_residue = worst_residue.max(d);
    }
    Ok(format!("finite parts within {worst:.1e}, n = 2 residues within {worst_residue:.1e}"))
}

fn f_routes() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [1u32, 3, 5, 7, 9] {
        let r = f_coefficient_routes(n, &ctx()).map_err(|e| e.to_string())?;
        let d = rel(r.decomposed.value, r.generic.value);
        if !(d <= 1e-10) {
            return Err(format!("n = {n}: {} vs {}", r.generic.value, r.decomposed.value));
        }
        worst = worst.max(d);
    }
    let zeta3 = 1.202_056_903_159_594_3;
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let closed = std::f64::consts::LN_2 / 4.0 + 3.0 * zeta3 / (8.0 * pi2);
    let f3 = f_coefficient_routes(3, &ctx()).map_err(|e| e.to_string())?.generic.value;
    if !(rel(f3, closed) <= 1e-12) {
        return Err(format!("F(3) = {f3:.17e}, closed form {closed:.17e}"));
    }
    Ok(format!("routes within {worst:.1e} relative; F(3) = log 2/4 + 3 zeta(3)/(8 pi^2)"))
}

fn scan() -> Outcome {
    let report = bar_schopka_scan(25, &ctx()).map_err(|e| e.to_string())?;
    let last = report.last().log_det.abs();
    let below = last < SCAN_REGRESSION_THRESHOLD;
    let detail = format!(
        "|log det(S^25)| = {last:.6e} (threshold {SCAN_REGRESSION_THRESHOLD:e}); tail rises at n = {:?}",
        report.tail_violations
    );
    if report.tail_strictly_decreasing && below {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn positivity() -> Outcome {
    let mut negative = Vec::new();
    let mut total = 0;
    for n in 1..=10 {
        for nu in NU_GRID {
            let cfg = SpectralConfig::new(n, nu).map_err(|e| e.to_string())?;
            let b = boundary_log_det(&cfg, &ctx()).map_err(|e| e.to_string())?.value;
            total += 1;
            if !(b > 0.0) {
                negative.push((n, nu, b));
            }
        }
    }
    if negative.is_empty() {
        return Ok(format!("{total} lattice points positive"));
    }
    let dims: std::collections::BTreeSet<u32> = negative.iter().map(|p| p.0).collect();
    let (n, nu, b) = negative[0];
    Err(format!(
        "{} of {total} points not positive, n in {dims:?}; first: n = {n}, nu = {nu}, value {b:.6e}",
        negative.len()
    ))
}

fn selftest() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_multigamma"))
        .arg("selftest")
        .env_remove(multigamma_cli::PRECISION_ENV)
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let summary = stdout.lines().last().unwrap_or("").to_string();
    if out.status.success() {
        Ok(summary)
    } else {
        Err(format!("exit {:?}: {summary}", out.status.code()))
    }
}

/// Number, title, runtime budget, check.
type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "Barnes normalization anchor", Some(Duration::from_secs(1)), normalization_anchor),
        (2, "ladder identity", Some(Duration::from_secs(5)), ladder),
        (3, "S^1 Dirac determinant", Some(Duration::from_secs(1)), circle),
        (4, "type-A coefficients", Some(Duration::from_secs(1)), type_a),
        (5, "anomaly cross-route", None, anomaly_cross_route),
        (6, "dimensional regularization", Some(Duration::from_secs(30)), dimreg),
        (7, "F-coefficient routes", None, f_routes),
        (8, "large-dimension scan", Some(Duration::from_secs(60)), scan),
        (9, "positivity in the mass window", None, positivity),
        (10, "full selftest", Some(Duration::from_secs(180)), selftest),
    ];
    let mut passed = 0;
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = budget.filter(|b| elapsed > *b);
        let ok = outcome.is_ok() && over.is_none();
        let detail = match &outcome {
            Ok(d) | Err(d) => d.as_str(),
        };
        let timing = match budget {
            Some(b) => format!("{:.3} s of {} s", elapsed.as_secs_f64(), b.as_secs()),
            None => format!("{:.3} s", elapsed.as_secs_f64()),
        };
        println!("criterion {id:>2} {}  {title}: {detail} ({timing})", if ok { "PASS" } else { "FAIL" });
        passed += ok as u32;
    }
    println!("acceptance: {passed} of 10 criteria passed");
    if passed == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
