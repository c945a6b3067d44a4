//! Bracketed scalar root finding: bisection down to a coarse width, then a
//! Newton polish that falls back to bisection whenever it leaves the bracket.

use crate::error::{Error, Result};

/// Width at which bisection hands over to Newton.
pub const BISECTION_WIDTH: f64 = 1e-6;
/// Relative step tolerance of the Newton polish.
pub const DEFAULT_TOL_ROOT: f64 = 1e-12;
/// Hard cap on iterations of either phase.
pub const MAX_ITERATIONS: usize = 400;

/// Finds the unique sign change of `f` inside `[lo, hi]`.
///
/// `f` returns the value and derivative. The endpoints must bracket a sign
/// change (a zero value at an endpoint is accepted as the root).
pub fn bracketed_root<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (mut f_lo, _) = f(lo);
    let (f_hi, _) = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || !f_lo.is_finite() || !f_hi.is_finite() {
        return Err(Error::NonConvergence {
            iterations: 0,
            last_x: lo,
        });
    }

    let mut iterations = 0;
    while hi - lo > BISECTION_WIDTH * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        let (f_mid, _) = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                iterations,
                last_x: mid,
            });
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERATIONS {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= tol * x.abs().max(f64::MIN_POSITIVE) || hi - lo <= tol * x.abs() {
            return Ok(x);
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        last_x: x,
    })
}

/// Plain bisection on a continuous function without derivative information.
/// Stops when the bracket is narrower than `width`.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, width: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NonConvergence {
            iterations: 0,
            last_x: lo,
        });
    }
    for _ in 0..MAX_ITERATIONS {
        if (hi - lo).abs() <= width {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        last_x: 0.5 * (lo + hi),
    })
}
