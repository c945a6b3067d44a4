//! Counting bounds for the positive spectrum.

use std::f64::consts::PI;

use super::SlotTable;
use crate::error::{Error, Result};
use crate::interval::RobinParam;

/// First positive zero of the Bessel function J₀.
pub const BESSEL_J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;

/// f(λ) = π/4 − π/j² − 8/√λ.
pub fn f_bound(lambda: f64) -> f64 {
    PI / 4.0 - PI / (BESSEL_J0_FIRST_ZERO * BESSEL_J0_FIRST_ZERO) - 8.0 / lambda.sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountingReport {
    pub lambda: f64,
    pub h: f64,
    /// #{(i, j) : i, j ≥ 2, π⁻²(α_i² + α_j²) < λ}
    pub n_plus: usize,
    /// #{(i, j) : i, j ≥ 2, i² + j² < λ}
    pub neumann_count: usize,
    /// (π/4)λ − 4√λ
    pub lower_bound: f64,
    /// #{(i, j) : i, j ≥ 2, (i−1)² + (j−1)² < λ}
    pub shifted_count: usize,
    /// (π/4)λ
    pub upper_bound: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub f_value: f64,
}

fn lattice_count(lambda: f64, shift: i64) -> usize {
    let mut n = 0;
    let r = lambda.sqrt().ceil() as i64 + 2;
    for i in 2..=r {
        for j in 2..=r {
            let (a, b) = (i - shift, j - shift);
            if ((a * a + b * b) as f64) < lambda {
                n += 1;
            }
        }
    }
    n
}

/// Counts ordered pairs of trigonometric modes below λ and compares them with
/// the lattice counts and the bounds (π/4)λ − 4√λ ≤ N₊ ≤ (π/4)λ.
pub fn counting_bound_check(lambda: f64, h: RobinParam) -> Result<CountingReport> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    // α_i > (i−1)π, so no slot beyond √λ + 1 can contribute
    let max_slot = lambda.sqrt().ceil() as usize + 2;
    let table = SlotTable::new(h, max_slot)?;
    let mut n_plus = 0;
    for i in 2..=max_slot {
        for j in 2..=max_slot {
            let v = (table.slots[i].signed_square + table.slots[j].signed_square) / (PI * PI);
            if v < lambda {
                n_plus += 1;
            }
        }
    }
    let neumann_count = lattice_count(lambda, 0);
    let shifted_count = lattice_count(lambda, 1);
    let lower_bound = PI / 4.0 * lambda - 4.0 * lambda.sqrt();
    let upper_bound = PI / 4.0 * lambda;
    Ok(CountingReport {
        lambda,
        h: h.h(),
        n_plus,
        neumann_count,
        lower_bound,
        shifted_count,
        upper_bound,
        lower_ok: n_plus >= neumann_count && neumann_count as f64 >= lower_bound,
        upper_ok: n_plus <= shifted_count && shifted_count as f64 <= upper_bound,
        f_value: f_bound(lambda),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_is_increasing() {
        let mut prev = f_bound(1.0);
        for l in 2..2000 {
            let v = f_bound(l as f64);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn lattice_counts_small() {
        // i, j ≥ 2 with i² + j² < 20: (2,2),(2,3),(3,2),(3,3)
        assert_eq!(lattice_count(20.0, 0), 4);
        // (i−1)² + (j−1)² < 3: (2,2)
        assert_eq!(lattice_count(3.0, 1), 1);
    }

    #[test]
    fn bounds_at_100() {
        let r = counting_bound_check(100.0, RobinParam::new(-1.0).unwrap()).unwrap();
        assert!(r.n_plus as f64 >= PI * 25.0 - 40.0);
        assert!(r.lower_ok && r.upper_ok);
    }
}
