//! Spectral quantities on round spheres and hyperbolic space.
//!
//! All determinants are built from eigenvalue magnitudes: the boundary
//! kernel has eigenvalues `±λ_l`, and the constant phase of the negative half
//! sums to zero under dimensional regularization. Boundary determinants are
//! the bare Barnes quotient; no scheme-dependent polynomial terms are added.

mod anomaly;
mod determinant;
mod dimreg;
mod spectrum;

use alloc::format;

use crate::error::{Error, Result};
use crate::precision::Estimate;

pub use anomaly::{
    anomaly_integrated, anomaly_integrated_exact, anomaly_quadrature, bulk_anomaly_lagrangian,
    bulk_anomaly_lagrangian_exact, pochhammer_product, type_a_coefficient,
    type_a_coefficient_exact, type_a_quadrature, volume_anomaly, PiRational,
};
pub use determinant::{
    bar_schopka_scan, boundary_log_det, boundary_log_det_formal, bulk_log_det_ratio,
    dirac_det_log, f_coefficient, f_coefficient_routes, f_decomposition, FCoefficientRoutes,
    FDecomposition, ScanEntry, ScanReport, SCAN_TAIL_START,
};
pub use dimreg::{
    dimreg_continuation, dimreg_continuation_with, regularized_mode_sum, ContinuationReport,
    DEFAULT_EPSILON_GRID, RESIDUE_TO_ANOMALY,
};
pub use spectrum::{boundary_eigenvalue, degeneracy, mode_level, ModeLevel};

/// Boundary dimension `n` and deformation parameter `ν` (the bulk mass `m`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    n: u32,
    nu: f64,
}

impl SpectralConfig {
    /// Requires `n >= 1` and `0 < ν <= 1/2`.
    pub fn new(n: u32, nu: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("SpectralConfig", "dimension n must be >= 1"));
        }
        if !(nu > 0.0 && nu <= 0.5) {
            return Err(Error::domain(
                "SpectralConfig",
                format!("nu = {nu} outside the mass window (0, 1/2]"),
            ));
        }
        Ok(SpectralConfig { n, nu })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `λ+ = n/2 + ν`
    pub fn lambda_plus(&self) -> f64 {
        self.n as f64 / 2.0 + self.nu
    }

    /// `λ- = n/2 - ν`
    pub fn lambda_minus(&self) -> f64 {
        self.n as f64 / 2.0 - self.nu
    }
}

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    ClosedForm,
    ModeSumContinuation,
    Quadrature,
    ExactRational,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::ClosedForm => "closed-form",
            Route::ModeSumContinuation => "mode-sum-continuation",
            Route::Quadrature => "quadrature",
            Route::ExactRational => "exact-rational",
        }
    }
}

impl core::fmt::Display for Route {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value, its absolute error estimate and the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub route: Route,
}

impl EvalResult {
    pub(crate) fn from_estimate(e: Estimate, route: Route) -> Self {
        EvalResult {
            value: e.to_f64(),
            abs_error_estimate: e.abs_error.max(f64::EPSILON * 0.5 * e.to_f64().abs()),
            route,
        }
    }
}

/// `2^{⌊n/2⌋}`, the spinor dimension factor.
pub(crate) fn spinor_factor(n: u32) -> u64 {
    1u64 << (n / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_window() {
        assert!(SpectralConfig::new(3, 0.5).is_ok());
        assert!(SpectralConfig::new(3, 0.0).is_err());
        assert!(SpectralConfig::new(3, 0.51).is_err());
        assert!(SpectralConfig::new(0, 0.25).is_err());
        let c = SpectralConfig::new(4, 0.25).unwrap();
        assert_eq!(c.lambda_plus(), 2.25);
        assert_eq!(c.lambda_minus(), 1.75);
    }
}
