//! Precision control and error-carrying values.

use alloc::format;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Target accuracy and series/quadrature knobs shared by all evaluators.
///
/// The Euler–Maclaurin cutoff is a starting point: evaluators double it
/// (up to [`PrecisionContext::max_cutoff`]) while the truncation estimate
/// misses the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    target_rel_error: f64,
    euler_maclaurin_cutoff: u32,
    correction_order: u32,
    quadrature_order: u32,
}

impl PrecisionContext {
    pub const DEFAULT_TARGET: f64 = 1e-12;
    /// Loosest accepted target.
    pub const MAX_TARGET: f64 = 1e-6;

    pub fn new(
        target_rel_error: f64,
        euler_maclaurin_cutoff: u32,
        correction_order: u32,
        quadrature_order: u32,
    ) -> Result<Self> {
        if !(target_rel_error > 0.0 && target_rel_error <= Self::MAX_TARGET) {
            return Err(Error::domain(
                "PrecisionContext",
                format!("target_rel_error {target_rel_error:e} not in (0, 1e-6]"),
            ));
        }
        if euler_maclaurin_cutoff < 8 {
            return Err(Error::domain(
                "PrecisionContext",
                format!("euler_maclaurin_cutoff {euler_maclaurin_cutoff} < 8"),
            ));
        }
        if correction_order < 2 {
            return Err(Error::domain(
                "PrecisionContext",
                format!("correction_order {correction_order} < 2"),
            ));
        }
        if quadrature_order < 2 {
            return Err(Error::domain(
                "PrecisionContext",
                format!("quadrature_order {quadrature_order} < 2"),
            ));
        }
        Ok(PrecisionContext {
            target_rel_error,
            euler_maclaurin_cutoff,
            correction_order,
            quadrature_order,
        })
    }

    /// Default knobs with a different target.
    pub fn with_target(target_rel_error: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(
            target_rel_error,
            d.euler_maclaurin_cutoff,
            d.correction_order,
            d.quadrature_order,
        )
    }

    pub fn target_rel_error(&self) -> f64 {
        self.target_rel_error
    }

    pub fn euler_maclaurin_cutoff(&self) -> u32 {
        self.euler_maclaurin_cutoff
    }

    pub fn correction_order(&self) -> u32 {
        self.correction_order
    }

    pub fn quadrature_order(&self) -> u32 {
        self.quadrature_order
    }

    pub fn max_cutoff(&self) -> u32 {
        self.euler_maclaurin_cutoff.saturating_mul(64)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            target_rel_error: Self::DEFAULT_TARGET,
            euler_maclaurin_cutoff: 8,
            correction_order: 60,
            quadrature_order: 16,
        }
    }
}

/// A double-double value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Dd,
    pub abs_error: f64,
}

impl Estimate {
    pub fn new(value: Dd, abs_error: f64) -> Self {
        Estimate { value, abs_error }
    }

    pub fn exact(value: Dd) -> Self {
        Estimate {
            value,
            abs_error: 0.0,
        }
    }

    #[inline]
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn rel_error(&self) -> f64 {
        let v = self.value.to_f64().abs();
        if v == 0.0 {
            if self.abs_error == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.abs_error / v
        }
    }

    pub fn scale(self, c: Dd) -> Estimate {
        Estimate {
            value: self.value * c,
            abs_error: self.abs_error * c.to_f64().abs(),
        }
    }
}

impl core::ops::Neg for Estimate {
    type Output = Estimate;

    fn neg(self) -> Estimate {
        Estimate {
            value: -self.value,
            abs_error: self.abs_error,
        }
    }
}

impl core::ops::Add for Estimate {
    type Output = Estimate;

    fn add(self, other: Estimate) -> Estimate {
        Estimate {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
        }
    }
}

impl core::ops::Sub for Estimate {
    type Output = Estimate;

    fn sub(self, other: Estimate) -> Estimate {
        Estimate {
            value: self.value - other.value,
            abs_error: self.abs_error + other.abs_error,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_window_targets() {
        assert!(PrecisionContext::with_target(1e-2).is_err());
        assert!(PrecisionContext::with_target(0.0).is_err());
        assert!(PrecisionContext::with_target(1e-6).is_ok());
        assert!(PrecisionContext::new(1e-12, 7, 10, 16).is_err());
        assert!(PrecisionContext::new(1e-12, 8, 1, 16).is_err());
    }
}
