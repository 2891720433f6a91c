use num_bigint::BigInt;

use super::{spinor_factor, SpectralConfig};
use crate::exact::binomial;

/// One angular level of the boundary kernel on `S^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeLevel {
    pub l: u32,
    /// The eigenvalues at this level are `±eigenvalue_magnitude`.
    pub eigenvalue_magnitude: f64,
    pub degeneracy: BigInt,
}

/// `Γ(l + n/2 + ν + 1/2) / Γ(l + n/2 - ν + 1/2)`.
///
/// At `ν = 1/2` the quotient telescopes to `n/2 + l`, returned exactly.
pub fn boundary_eigenvalue(l: u32, cfg: &SpectralConfig) -> f64 {
    let base = l as f64 + cfg.n() as f64 / 2.0;
    if cfg.nu() == 0.5 {
        return base;
    }
    let a = base + cfg.nu() + 0.5;
    let b = base - cfg.nu() + 0.5;
    libm::exp(libm::lgamma(a) - libm::lgamma(b))
}

/// `2^{⌊n/2⌋} (l+n-1)! / (l! (n-1)!)`.
pub fn degeneracy(l: u32, n: u32) -> BigInt {
    assert!(n >= 1, "dimension must be >= 1");
    binomial((l + n - 1) as u64, (n - 1) as u64) * BigInt::from(spinor_factor(n))
}

pub fn mode_level(l: u32, cfg: &SpectralConfig) -> ModeLevel {
    ModeLevel {
        l,
        eigenvalue_magnitude: boundary_eigenvalue(l, cfg),
        degeneracy: degeneracy(l, cfg.n()),
    }
}
