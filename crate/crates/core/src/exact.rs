//! Exact combinatorial coefficients: Bernoulli and Stirling numbers,
//! binomials and Pochhammer symbols.
//!
//! Bernoulli numbers use the generating function `t / (e^t - 1)`, so
//! `B_1 = -1/2`. The few formulas written for the opposite convention call
//! [`bernoulli_plus`] instead.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use spin::{Once, RwLock};

use crate::error::{Error, Result};

/// Reduced fraction with arbitrary-size numerator and positive denominator.
pub type ExactRational = BigRational;

/// Largest Bernoulli index served by [`bernoulli`].
pub const BERNOULLI_CAP: usize = 256;

static BERNOULLI: Once<Vec<ExactRational>> = Once::new();
static STIRLING: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

pub(crate) fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// B_0 ..= B_256, built from tangent numbers with integer arithmetic only.
fn build_bernoulli_table() -> Vec<ExactRational> {
    let half = BERNOULLI_CAP / 2;
    // tangent[k] = T_k, the k-th tangent number (T_1 = 1, T_2 = 2, T_3 = 16).
    let mut tangent: Vec<BigInt> = alloc::vec![BigInt::zero(); half + 1];
    tangent[1] = BigInt::one();
    for k in 2..=half {
        tangent[k] = &tangent[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=half {
        for j in k..=half {
            tangent[j] = &tangent[j - 1] * BigInt::from(j - k) + &tangent[j] * BigInt::from(j - k + 2);
        }
    }
    let mut table = alloc::vec![BigRational::zero(); BERNOULLI_CAP + 1];
    table[0] = BigRational::one();
    table[1] = rat(-1, 2);
    for k in 1..=half {
        // B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - BigInt::one());
        let mut num = &tangent[k] * BigInt::from(2 * k);
        if k % 2 == 0 {
            num = -num;
        }
        table[2 * k] = BigRational::new(num, den);
    }
    table
}

/// The shared Bernoulli table `B_0 ..= B_256`.
pub fn bernoulli_table() -> &'static [ExactRational] {
    BERNOULLI.call_once(build_bernoulli_table)
}

/// Bernoulli number `B_k` with `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> Result<ExactRational> {
    if k > BERNOULLI_CAP {
        return Err(Error::ResourceLimit {
            op: "bernoulli",
            detail: format!("index {k} above cap {BERNOULLI_CAP}"),
        });
    }
    Ok(bernoulli_table()[k].clone())
}

/// `B_k` in the `t e^t / (e^t - 1)` convention (`B_1 = +1/2`).
pub fn bernoulli_plus(k: usize) -> Result<ExactRational> {
    if k == 1 {
        Ok(rat(1, 2))
    } else {
        bernoulli(k)
    }
}

/// `sum_{j=0}^{k} C(k+1, j) B_j`, which vanishes for every `k >= 1` on a
/// correct table.
pub fn bernoulli_recurrence_defect(table: &[ExactRational], k: usize) -> ExactRational {
    (0..=k)
        .map(|j| BigRational::from_integer(binomial((k + 1) as u64, j as u64)) * &table[j])
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn ensure_stirling_rows(n: usize) {
    if STIRLING.read().len() > n {
        return;
    }
    let mut rows = STIRLING.write();
    if rows.is_empty() {
        rows.push(alloc::vec![BigInt::one()]);
    }
    while rows.len() <= n {
        // s(m+1, k) = s(m, k-1) - m s(m, k)
        let m = rows.len() - 1;
        let prev = &rows[m];
        let mut next = alloc::vec![BigInt::zero(); m + 2];
        for (k, slot) in next.iter_mut().enumerate() {
            let left = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
            let right = prev.get(k).cloned().unwrap_or_default();
            *slot = left - right * BigInt::from(m);
        }
        rows.push(next);
    }
}

/// Signed Stirling number of the first kind `s(n, j)`, extended by
/// `s(0, 0) = 1`. Zero outside `0 <= j <= n`.
pub(crate) fn stirling_signed(n: u32, j: i64) -> BigInt {
    if j < 0 || j > n as i64 {
        return BigInt::zero();
    }
    ensure_stirling_rows(n as usize);
    STIRLING.read()[n as usize][j as usize].clone()
}

/// Signed Stirling number of the first kind `s(n, j)` for `n >= 1`; zero
/// when `j < 1` or `j > n`.
pub fn stirling_first(n: u32, j: i64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::domain("stirling_first", "n must be >= 1"));
    }
    if j < 1 {
        return Ok(BigInt::zero());
    }
    Ok(stirling_signed(n, j))
}

/// Rising factorial `x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x + i as f64))
}

pub fn pochhammer_exact(x: &ExactRational, k: u32) -> ExactRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * (x + BigRational::from_integer(BigInt::from(i))))
}

/// Exact value of a finite `f64` as a fraction.
pub fn rational_from_f64(x: f64) -> Result<ExactRational> {
    BigRational::from_float(x).ok_or_else(|| Error::domain("rational_from_f64", format!("{x} is not finite")))
}

/// `x^k` for a rational base and signed integer exponent.
pub fn rational_pow(x: &ExactRational, k: i32) -> ExactRational {
    if k >= 0 {
        (0..k).fold(BigRational::one(), |a, _| a * x)
    } else {
        rational_pow(x, -k).recip()
    }
}

pub(crate) fn sign_pow(k: u32) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub(crate) fn abs_int(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0).unwrap(), BigRational::one());
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(3).unwrap(), BigRational::zero());
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert_eq!(bernoulli(20).unwrap(), rat(-174611, 330));
        assert_eq!(bernoulli_plus(1).unwrap(), rat(1, 2));
    }

    #[test]
    fn bernoulli_cap_is_enforced() {
        assert!(bernoulli(BERNOULLI_CAP).is_ok());
        assert!(matches!(bernoulli(BERNOULLI_CAP + 1), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn bernoulli_recurrence_up_to_30() {
        let t = bernoulli_table();
        for k in 1..=30 {
            assert!(bernoulli_recurrence_defect(t, k).is_zero(), "k = {k}");
        }
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_first(1, 1).unwrap(), BigInt::from(1));
        assert_eq!(stirling_first(3, 2).unwrap(), BigInt::from(-3));
        assert_eq!(stirling_first(4, 1).unwrap(), BigInt::from(-6));
        assert_eq!(stirling_first(4, 0).unwrap(), BigInt::zero());
        assert_eq!(stirling_first(4, 5).unwrap(), BigInt::zero());
        assert!(stirling_first(0, 0).is_err());
    }

    #[test]
    fn stirling_generates_falling_factorial() {
        // prod_{i<n} (x - i) = sum_j s(n, j) x^j, checked at integer points
        for n in 1..=12u32 {
            for x in -3i64..=15 {
                let lhs = (0..n as i64).fold(BigInt::one(), |a, i| a * BigInt::from(x - i));
                let rhs = (1..=n as i64)
                    .map(|j| stirling_first(n, j).unwrap() * BigInt::from(x).pow(j as u32))
                    .fold(BigInt::zero(), |a, b| a + b);
                assert_eq!(lhs, rhs, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(0.5, 1), 0.5);
        assert_eq!(pochhammer(1.5, 2), 3.75);
        assert_eq!(pochhammer_exact(&rat(3, 2), 2), rat(15, 4));
        assert_eq!(pochhammer(-2.0, 4), 0.0);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(40, 20), BigInt::from(137_846_528_820u64));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }
}
