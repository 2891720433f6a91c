//! Barnes' multiple gamma function built from Hurwitz-zeta derivatives, and
//! the spectral quantities on round spheres that it closes: boundary
//! two-point determinants, bulk determinant ratios, type-A anomaly
//! coefficients, iterated-Dirac determinants and F-coefficients.
//!
//! The crate is `no_std` with `alloc`. Working precision is double-double
//! ([`Dd`]); exact rationals carry Bernoulli/Stirling data and polynomial
//! integrals.
#![no_std]

extern crate alloc;

pub mod barnes;
pub mod dd;
pub mod error;
pub mod exact;
pub mod hurwitz;
pub mod poly;
pub mod precision;
pub mod quadrature;
pub mod richardson;
pub mod spectral;

pub use dd::Dd;
pub use error::{Error, Result};
pub use exact::{bernoulli, pochhammer, stirling_first, ExactRational};
pub use hurwitz::{
    hurwitz_zeta, hurwitz_zeta_sderiv, riemann_zeta_deriv_neg_even, ZetaDerivRequest,
};
pub use precision::{Estimate, PrecisionContext};
pub use barnes::{
    b_poly, ladder_check, log_barnes_gamma, pascal_expand, special_value_half, special_value_one,
    BPolynomial, BarnesPoint,
};
