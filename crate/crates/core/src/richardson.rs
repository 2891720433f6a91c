//! Richardson extrapolation on geometric step sequences.

use alloc::vec::Vec;

use crate::dd::Dd;

/// Limit of a sequence sampled at `h_i = h_0 / ratio^i` whose error is a
/// power series `c_1 h + c_2 h^2 + …`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: Dd,
    /// `|T(order) - T(order-1)|` on the finest row.
    pub disagreement: f64,
}

/// Eliminates the first `order` powers of `h`. Needs `samples.len() > order`.
pub fn extrapolate(samples: &[Dd], ratio: f64, order: usize) -> Extrapolated {
    assert!(samples.len() > order, "need more samples than extrapolation order");
    let mut column: Vec<Dd> = samples.to_vec();
    let mut previous_best = *column.last().expect("non-empty");
    let mut factor = 1.0;
    for _ in 0..order {
        factor *= ratio;
        let next: Vec<Dd> = column
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / Dd::from_f64(factor - 1.0))
            .collect();
        previous_best = *column.last().expect("non-empty");
        column = next;
    }
    let value = *column.last().expect("non-empty");
    Extrapolated {
        value,
        disagreement: (value - previous_best).to_f64().abs(),
    }
}
