//! Gauss–Legendre quadrature with order doubling.

use alloc::format;
use alloc::vec::Vec;

use crate::dd::{Dd, DD_EPSILON};
use crate::error::{Error, Result};
use crate::precision::Estimate;

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `order` points; nodes by Newton iteration on `P_order`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            // Tricomi's initial guess for the i-th root.
            let theta = core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5);
            let mut x = libm::cos(theta);
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-17 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f`, accumulated in double-double.
    pub fn integrate<F>(&self, a: f64, b: f64, mut f: F) -> Result<Dd>
    where
        F: FnMut(Dd) -> Result<Dd>,
    {
        let half = (Dd::from_f64(b) - Dd::from_f64(a)).mul_f64(0.5);
        let mid = (Dd::from_f64(b) + Dd::from_f64(a)).mul_f64(0.5);
        let mut acc = Dd::ZERO;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = mid + half.mul_f64(*x);
            acc += f(t)?.mul_f64(*w);
        }
        Ok(acc * half)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Doubles the rule order from `start_order` until two successive values
/// agree to `rel_tol`, up to `max_order` points.
pub fn integrate_adaptive<F>(
    op: &'static str,
    a: f64,
    b: f64,
    start_order: usize,
    max_order: usize,
    rel_tol: f64,
    mut f: F,
) -> Result<Estimate>
where
    F: FnMut(Dd) -> Result<Dd>,
{
    let mut order = start_order.max(2);
    let mut previous = GaussLegendre::new(order).integrate(a, b, &mut f)?;
    loop {
        let next_order = order * 2;
        let current = GaussLegendre::new(next_order).integrate(a, b, &mut f)?;
        let diff = (current - previous).to_f64().abs();
        let floor = 64.0 * DD_EPSILON * current.to_f64().abs();
        if diff <= rel_tol * current.to_f64().abs() || diff <= floor || diff == 0.0 {
            // Gauss–Legendre converges geometrically; the coarser rule's
            // deviation bounds the finer one's error.
            return Ok(Estimate::new(current, diff.max(floor)));
        }
        if next_order >= max_order {
            return Err(Error::Convergence {
                op,
                params: format!("[{a}, {b}], order {next_order}"),
                estimate: diff / current.to_f64().abs(),
                target: rel_tol,
            });
        }
        previous = current;
        order = next_order;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        // 8 points integrate degree 15 exactly: ∫_0^1 x^15 = 1/16
        let g = GaussLegendre::new(8);
        let v = g.integrate(0.0, 1.0, |x| Ok(x.powi(15))).unwrap();
        assert!((v.to_f64() - 1.0 / 16.0).abs() < 1e-16);
        let w: f64 = g.weights().iter().sum();
        assert!((w - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_converges_on_smooth_integrand() {
        let e = integrate_adaptive("test", 0.0, 1.0, 4, 256, 1e-14, |x| Ok(x.exp())).unwrap();
        assert!((e.to_f64() - (core::f64::consts::E - 1.0)).abs() < 1e-15);
    }
}
