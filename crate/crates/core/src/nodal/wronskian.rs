//! Zeros of W(x) = β₀ sinh(β₀x/π)cos(α_q x/π) + α_q cosh(β₀x/π)sin(α_q x/π),
//! the candidate coordinates of interior critical zeros of Φ for the pair (0, q).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::interval::{solve_alpha, solve_beta0, RobinParam};
use crate::roots::bisect;

/// Samples on (0, π/2) used to bracket the positive zeros.
const SCAN_SAMPLES: usize = 8192;

/// W divided by cosh(β₀x/π), which keeps the zeros and stays bounded.
fn w_scaled(beta: f64, alpha: f64, x: f64) -> f64 {
    beta * (beta * x / PI).tanh() * (alpha * x / PI).cos() + alpha * (alpha * x / PI).sin()
}

/// W(x) itself.
pub fn wronskian(q: usize, h: RobinParam, x: f64) -> Result<f64> {
    let beta = solve_beta0(h)?.root;
    let alpha = solve_alpha(q, h)?.root;
    let (bx, ax) = (beta * x / PI, alpha * x / PI);
    Ok(beta * bx.sinh() * ax.cos() + alpha * bx.cosh() * ax.sin())
}

#[derive(Debug, Clone, PartialEq)]
pub struct WronskianZeros {
    pub q: usize,
    pub h: f64,
    pub beta0: f64,
    pub alpha_q: f64,
    /// Sorted, antisymmetric, containing 0.
    pub zeros: Vec<f64>,
}

impl WronskianZeros {
    /// The positive zeros γ₁ < γ₂ < ...
    pub fn positive(&self) -> Vec<f64> {
        self.zeros.iter().copied().filter(|&z| z > 0.0).collect()
    }

    /// α_q γ_ℓ/π ∈ ((2ℓ−1)π/2, ℓπ) for every positive zero.
    pub fn localisation_holds(&self) -> bool {
        self.positive().iter().enumerate().all(|(i, &g)| {
            let l = (i + 1) as f64;
            let t = self.alpha_q * g / PI;
            t > (2.0 * l - 1.0) * PI / 2.0 && t < l * PI
        })
    }

    /// The h → −∞ limits (2ℓ−1)π/(2(q−1)) of the positive zeros.
    pub fn limits(&self) -> Vec<f64> {
        let n = self.positive().len();
        (1..=n)
            .map(|l| (2 * l - 1) as f64 * PI / (2.0 * (self.q as f64 - 1.0)))
            .collect()
    }
}

/// All zeros of W in (−π/2, π/2). Fails with `CountMismatch` unless exactly
/// q − 1 are found.
pub fn wronskian_zeros(q: usize, h: RobinParam) -> Result<WronskianZeros> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("Wronskian needs q >= 2, got {q}")));
    }
    let beta = solve_beta0(h)?.root;
    let alpha = solve_alpha(q, h)?.root;
    let f = |x: f64| w_scaled(beta, alpha, x);

    // W is odd; scan the open half-interval and mirror
    let step = FRAC_PI_2 / SCAN_SAMPLES as f64;
    let mut positive = Vec::new();
    let mut prev_x = step;
    let mut prev = f(prev_x);
    for k in 2..SCAN_SAMPLES {
        let x = k as f64 * step;
        let v = f(x);
        if v == 0.0 {
            positive.push(x);
        } else if prev != 0.0 && v.signum() != prev.signum() {
            positive.push(bisect(f, prev_x, x, 1e-15)?);
        }
        prev = v;
        prev_x = x;
    }

    let mut zeros: Vec<f64> = positive.iter().rev().map(|z| -z).collect();
    zeros.push(0.0);
    zeros.extend(positive.iter().copied());
    if zeros.len() != q - 1 {
        return Err(Error::CountMismatch {
            expected: q - 1,
            found: zeros.len(),
        });
    }
    Ok(WronskianZeros {
        q,
        h: h.h(),
        beta0: beta,
        alpha_q: alpha,
        zeros,
    })
}
