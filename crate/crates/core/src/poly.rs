//! Dense univariate polynomials with exact rational coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dd::Dd;
use crate::exact::ExactRational;

/// Coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<ExactRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        RationalPoly { coeffs }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }

    pub fn scale(&self, c: &ExactRational) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation in exact arithmetic.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_dd(&self, x: Dd) -> Dd {
        self.coeffs
            .iter()
            .rev()
            .fold(Dd::ZERO, |acc, c| acc * x + Dd::from_rational(c))
    }

    /// `∫_0^x p(t) dt`, exactly.
    pub fn integral_from_zero(&self, x: &ExactRational) -> ExactRational {
        let mut power = x.clone();
        let mut acc = BigRational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power *= x;
            }
            acc += c * &power / BigRational::from_integer((i as i64 + 1).into());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn quarter_minus_square_integrates_to_one_twelfth() {
        let p = RationalPoly::new(vec![rat(1, 4), rat(0, 1), rat(-1, 1)]);
        assert_eq!(p.integral_from_zero(&rat(1, 2)), rat(1, 12));
        assert_eq!(p.eval(&rat(1, 2)), rat(0, 1));
    }

    #[test]
    fn product_of_factors() {
        let a = RationalPoly::new(vec![rat(1, 4), rat(0, 1), rat(-1, 1)]);
        let b = RationalPoly::new(vec![rat(9, 4), rat(0, 1), rat(-1, 1)]);
        let p = a.mul(&b);
        assert_eq!(p.degree(), 4);
        assert_eq!(p.integral_from_zero(&rat(1, 2)), rat(11, 60));
    }
}
