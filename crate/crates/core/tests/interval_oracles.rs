//! Interval modes checked against oracles that share no code with the solvers:
//! an RK4 shooting method for −u″ = μu with Robin ends, high-precision
//! reference values, and finite-difference checks of the boundary condition.

use std::f64::consts::{FRAC_PI_2, PI};

use robin_core::interval::{slot_mode, solve_alpha, solve_beta0, RobinParam, CRITICAL_H};
use robin_core::{beta_gap_squared, eval_mode, ModeIndex};

fn rp(h: f64) -> RobinParam {
    RobinParam::new(h).unwrap()
}

/// Robin mismatch u′(π/2) + h·u(π/2) after integrating −u″ = μu from
/// u(−π/2) = 1, u′(−π/2) = h·u(−π/2).
fn shoot(mu: f64, h: f64) -> f64 {
    let steps = 4000;
    let dx = PI / steps as f64;
    let (mut u, mut v) = (1.0, h);
    let f = |u: f64, v: f64| (v, -mu * u);
    for _ in 0..steps {
        let (k1u, k1v) = f(u, v);
        let (k2u, k2v) = f(u + 0.5 * dx * k1u, v + 0.5 * dx * k1v);
        let (k3u, k3v) = f(u + 0.5 * dx * k2u, v + 0.5 * dx * k2v);
        let (k4u, k4v) = f(u + dx * k3u, v + dx * k3v);
        u += dx / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += dx / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        // keep the magnitude bounded; only the sign of the mismatch matters
        let s = u.abs().max(v.abs());
        if s > 1e100 {
            u /= s;
            v /= s;
        }
    }
    let m = v + h * u;
    m / u.abs().max(v.abs())
}

/// First n eigenvalues μ of the interval problem by scanning and bisection.
fn shooting_eigenvalues(h: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let mut mu = -(h.abs() + 1.0).powi(2) - 1.0;
    let step = 1e-2;
    let mut prev = shoot(mu, h);
    while out.len() < n {
        let next = mu + step;
        let cur = shoot(next, h);
        if prev.signum() != cur.signum() {
            let (mut a, mut b, mut fa) = (mu, next, prev);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let fm = shoot(m, h);
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        mu = next;
        prev = cur;
    }
    out
}

#[test]
fn slot_values_match_shooting_in_both_regimes() {
    for h in [-0.3, -1.0, -4.0] {
        let oracle = shooting_eigenvalues(h, 6);
        for (slot, &mu) in oracle.iter().enumerate() {
            let s = slot_mode(slot, rp(h)).unwrap().signed_square / (PI * PI);
            assert!(
                (s - mu).abs() < 1e-7 * (1.0 + mu.abs()),
                "h={h} slot={slot}: {s} vs {mu}"
            );
        }
    }
}

#[test]
fn reference_values_at_the_critical_parameter() {
    // 30-digit reference computations, rounded to double precision
    let h = rp(CRITICAL_H);
    let b0 = solve_beta0(h).unwrap().root;
    assert!((b0 * b0 - 5.756_915_359_562_581).abs() < 1e-10);
    assert!((solve_alpha(2, h).unwrap().root - 5.596_772_091_567_774).abs() < 1e-11);
    assert!((solve_alpha(3, h).unwrap().root - 8.986_818_915_818_128).abs() < 1e-11);
}

#[test]
fn beta_gap_approaches_its_critical_limit() {
    let g = beta_gap_squared(rp(CRITICAL_H - 1e-8)).unwrap();
    assert!((g - 5.756_915_359_562_581).abs() < 1e-6, "{g}");
}

#[test]
fn modes_satisfy_the_robin_condition() {
    let d = 1e-5;
    for h in [-0.3, -2.0, -6.0] {
        let h = rp(h);
        let mut modes = vec![ModeIndex::hyperbolic0()];
        if h.is_deep() {
            modes.push(ModeIndex::hyperbolic1());
        }
        for p in 2..6 {
            modes.push(ModeIndex::trig(p).unwrap());
        }
        for mode in modes {
            let u = |x: f64| eval_mode(mode, h, x).unwrap();
            for (x, outward) in [(FRAC_PI_2, 1.0), (-FRAC_PI_2, -1.0)] {
                let inner = x - outward * d;
                // one-sided second-order outward normal derivative
                let du = (3.0 * u(x) - 4.0 * u(inner) + u(x - 2.0 * outward * d)) / (2.0 * d);
                let scale = u(x).abs().max(1.0);
                assert!(
                    (du + h.h() * u(x)).abs() < 1e-5 * scale * (1.0 + h.h().abs()),
                    "{mode:?} at {x}"
                );
            }
        }
    }
}

#[test]
fn modes_solve_the_interval_equation() {
    let d = 1e-4;
    let h = rp(-1.5);
    for slot in 0..5 {
        let m = slot_mode(slot, h).unwrap();
        let mu = m.signed_square / (PI * PI);
        for x in [-1.2, -0.3, 0.4, 1.1] {
            let u = |x: f64| m.shape.eval_unscaled(x);
            let upp = (u(x + d) - 2.0 * u(x) + u(x - d)) / (d * d);
            assert!(
                (-upp - mu * u(x)).abs() < 1e-5 * (1.0 + u(x).abs() * mu.abs()),
                "slot {slot} x={x}"
            );
        }
    }
}
