//! One-dimensional Robin eigenproblem on (−π/2, π/2).
//!
//! The interval modes are
//! * `β₀`: (β/2)·tanh(β/2) = −hπ/2, eigenfunction cosh(β₀x/π), eigenvalue −β₀²/π²;
//! * `β₁` (only for h < −2/π): (β/2)·coth(β/2) = −hπ/2, eigenfunction sinh(β₁x/π);
//! * `α_p`: α·tan(α/2) = hπ for even p, −α·cot(α/2) = hπ for odd p, with
//!   α_p ∈ ((p−1)π, pπ); `α₁` exists only for −2/π < h < 0.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::roots::{bracketed_root, DEFAULT_TOL_ROOT};

/// The boundary parameter at which the second interval mode changes type.
pub const CRITICAL_H: f64 = -2.0 / PI;
/// Half-width of the band around [`CRITICAL_H`] classified as critical.
pub const TAU_REG: f64 = 1e-10;
/// Relative tolerance for Robin boundary-condition checks.
pub const TAU_BC: f64 = 1e-9;
/// At h = −2/π the second interval eigenvalue is exactly 0 ...
pub const CRITICAL_EIGENVALUE: f64 = 0.0;

/// ... with eigenfunction u(x) = −x.
pub fn critical_mode(x: f64) -> f64 {
    -x
}

/// Root-finding tolerance, overridable from the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub root: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { root: DEFAULT_TOL_ROOT }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Shallow,
    Critical,
    Deep,
}

/// A strictly negative Robin parameter.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RobinParam {
    h: f64,
}

impl RobinParam {
    pub fn new(h: f64) -> Result<Self> {
        if !h.is_finite() || h >= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "h must be finite and negative, got {h}"
            )));
        }
        Ok(RobinParam { h })
    }

    pub fn h(self) -> f64 {
        self.h
    }

    pub fn regime(self) -> Regime {
        if (self.h - CRITICAL_H).abs() <= TAU_REG {
            Regime::Critical
        } else if self.h > CRITICAL_H {
            Regime::Shallow
        } else {
            Regime::Deep
        }
    }

    /// Critical counts as deep: slot 1 is no longer trigonometric.
    pub fn is_deep(self) -> bool {
        self.regime() != Regime::Shallow
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    Hyperbolic0,
    Hyperbolic1,
    Trig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    pub index: usize,
    pub kind: ModeKind,
}

impl ModeIndex {
    pub fn hyperbolic0() -> Self {
        ModeIndex {
            index: 0,
            kind: ModeKind::Hyperbolic0,
        }
    }

    pub fn hyperbolic1() -> Self {
        ModeIndex {
            index: 1,
            kind: ModeKind::Hyperbolic1,
        }
    }

    pub fn trig(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("trigonometric modes start at p = 1".into()));
        }
        Ok(ModeIndex {
            index: p,
            kind: ModeKind::Trig,
        })
    }

    pub fn parity(self) -> Parity {
        if self.index.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_hyperbolic(self) -> bool {
        self.kind != ModeKind::Trig
    }

    /// The mode occupying a slot of the pair convention. Slot 1 is α₁ when
    /// shallow and β₁ when deep; at the critical value it has no mode.
    pub fn for_slot(slot: usize, h: RobinParam) -> Result<Self> {
        match (slot, h.regime()) {
            (0, _) => Ok(Self::hyperbolic0()),
            (1, Regime::Shallow) => Self::trig(1),
            (1, Regime::Deep) => Ok(Self::hyperbolic1()),
            (1, Regime::Critical) => Err(Error::Regime(
                "slot 1 at h = -2/pi is the linear mode u = -x with eigenvalue 0".into(),
            )),
            (p, _) => Self::trig(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalEigenvalue {
    pub mode: ModeIndex,
    pub root: f64,
    pub value: f64,
    pub residual: f64,
}

impl IntervalEigenvalue {
    fn new(mode: ModeIndex, root: f64, residual: f64) -> Self {
        let sq = root * root / (PI * PI);
        let value = if mode.is_hyperbolic() { -sq } else { sq };
        IntervalEigenvalue {
            mode,
            root,
            value,
            residual,
        }
    }
}

// ---------------------------------------------------------------------------
// defining functions

fn beta0_fn(beta: f64, h: f64) -> (f64, f64) {
    let t = (0.5 * beta).tanh();
    let sech2 = 1.0 - t * t;
    (0.5 * beta * t + 0.5 * h * PI, 0.5 * t + 0.25 * beta * sech2)
}

/// x·coth(x) − 1 and its derivative, accurate for small x.
fn xcoth_minus_one(x: f64) -> (f64, f64) {
    if x < 1e-2 {
        let x2 = x * x;
        let g = x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0;
        let dg = 2.0 * x / 3.0 - 4.0 * x2 * x / 45.0 + 12.0 * x2 * x2 * x / 945.0;
        (g, dg)
    } else {
        let e = (-2.0 * x).exp();
        let coth = (1.0 + e) / (1.0 - e);
        let inv_sinh2 = 4.0 * e / ((1.0 - e) * (1.0 - e));
        (x * coth - 1.0, coth - x * inv_sinh2)
    }
}

fn beta1_fn(beta: f64, c: f64) -> (f64, f64) {
    let (g, dg) = xcoth_minus_one(0.5 * beta);
    (g - c, 0.5 * dg)
}

fn alpha_fn(alpha: f64, h: f64, even: bool) -> (f64, f64) {
    let (s, c) = (0.5 * alpha).sin_cos();
    let hp = h * PI;
    if even {
        (alpha * s - hp * c, s + 0.5 * alpha * c + 0.5 * hp * s)
    } else {
        (alpha * c + hp * s, c - 0.5 * alpha * s + 0.5 * hp * c)
    }
}

// ---------------------------------------------------------------------------
// solvers

pub fn solve_beta0(h: RobinParam) -> Result<IntervalEigenvalue> {
    solve_beta0_with(h, Tolerances::default())
}

pub fn solve_beta0_with(h: RobinParam, tol: Tolerances) -> Result<IntervalEigenvalue> {
    let hv = h.h();
    let (lo, hi) = if h.regime() == Regime::Shallow {
        (0.0, 50.0)
    } else {
        (-hv * PI * (1.0 - 1e-12), -hv * PI + 40.0)
    };
    // the lower endpoint 0 is itself a root of the residual; nudge off it
    let lo = if lo == 0.0 { f64::MIN_POSITIVE.sqrt() } else { lo };
    let root = bracketed_root(|b| beta0_fn(b, hv), lo, hi, tol.root)?;
    let residual = beta0_fn(root, hv).0 / (0.5 * hv * PI).abs();
    Ok(IntervalEigenvalue::new(ModeIndex::hyperbolic0(), root, residual))
}

pub fn solve_beta1(h: RobinParam) -> Result<IntervalEigenvalue> {
    solve_beta1_with(h, Tolerances::default())
}

pub fn solve_beta1_with(h: RobinParam, tol: Tolerances) -> Result<IntervalEigenvalue> {
    if h.regime() != Regime::Deep {
        return Err(Error::Regime(format!(
            "beta_1 exists only for h < -2/pi, got h = {}",
            h.h()
        )));
    }
    let hv = h.h();
    let c = -0.5 * hv * PI - 1.0;
    let hi = -hv * PI;
    let mut lo = 1e-300;
    if beta1_fn(lo, c).0 >= 0.0 {
        lo = 0.0;
    }
    let root = bracketed_root(|b| beta1_fn(b, c), lo, hi, tol.root)?;
    let residual = beta1_fn(root, c).0 / (0.5 * hv * PI).abs();
    Ok(IntervalEigenvalue::new(ModeIndex::hyperbolic1(), root, residual))
}

pub fn solve_alpha(p: usize, h: RobinParam) -> Result<IntervalEigenvalue> {
    solve_alpha_with(p, h, Tolerances::default())
}

pub fn solve_alpha_with(p: usize, h: RobinParam, tol: Tolerances) -> Result<IntervalEigenvalue> {
    let mode = ModeIndex::trig(p)?;
    if p == 1 && h.regime() != Regime::Shallow {
        return Err(Error::Regime(format!(
            "alpha_1 exists only for -2/pi < h < 0, got h = {}",
            h.h()
        )));
    }
    let hv = h.h();
    let even = p.is_multiple_of(2);
    let f = |a: f64| alpha_fn(a, hv, even);
    let base_lo = (p as f64 - 1.0) * PI;
    let base_hi = p as f64 * PI;

    // shrink the endpoint offset until the bracket shows a sign change
    let mut eps = 1e-9;
    let (lo, hi) = loop {
        let lo = base_lo + eps;
        let hi = base_hi - eps;
        if f(lo).0.signum() != f(hi).0.signum() {
            break (lo, hi);
        }
        if eps == 0.0 {
            return Err(Error::NonConvergence {
                iterations: 0,
                last_x: base_hi,
            });
        }
        eps = if eps < 1e-300 { 0.0 } else { eps * 1e-3 };
    };
    let root = bracketed_root(f, lo, hi, tol.root)?;
    let residual = f(root).0 / (root + (hv * PI).abs());
    Ok(IntervalEigenvalue::new(mode, root, residual))
}

/// Solves whichever mode is given.
pub fn solve_mode(mode: ModeIndex, h: RobinParam) -> Result<IntervalEigenvalue> {
    solve_mode_with(mode, h, Tolerances::default())
}

pub fn solve_mode_with(mode: ModeIndex, h: RobinParam, tol: Tolerances) -> Result<IntervalEigenvalue> {
    match mode.kind {
        ModeKind::Hyperbolic0 => solve_beta0_with(h, tol),
        ModeKind::Hyperbolic1 => solve_beta1_with(h, tol),
        ModeKind::Trig => solve_alpha_with(mode.index, h, tol),
    }
}

/// The gaps β₀ + hπ and β₁ + hπ, evaluated from identities that hold at the
/// roots so that they keep full relative precision even when they are far
/// below the spacing of doubles near −hπ. The second entry is `None` unless
/// the regime is deep.
pub fn beta_excess(h: RobinParam) -> Result<(f64, Option<f64>)> {
    let b0 = solve_beta0(h)?.root;
    let d0 = 2.0 * b0 / (b0.exp() + 1.0);
    let d1 = match h.regime() {
        Regime::Deep => {
            let b1 = solve_beta1(h)?.root;
            Some(-2.0 * b1 / b1.exp_m1())
        }
        _ => None,
    };
    Ok((d0, d1))
}

/// β₀² − β₁², accurate for deep h where the two roots agree to many digits.
pub fn beta_gap_squared(h: RobinParam) -> Result<f64> {
    let b0 = solve_beta0(h)?.root;
    let b1 = solve_beta1(h)?.root;
    let (d0, d1) = beta_excess(h)?;
    let d1 = d1.expect("deep regime checked by solve_beta1");
    Ok((d0 - d1) * (b0 + b1))
}

// ---------------------------------------------------------------------------
// asymptotics

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEval {
    /// The expansion approximates α_{p+1}.
    pub p: usize,
    pub order: usize,
    pub value: f64,
}

/// Coefficients (μ₁, μ₂, μ₃) of α_{p+1}(h) = pπ + μ₁/h + μ₂/h² + μ₃/h³ + O(h⁻⁴).
pub fn mu_coefficients(p: usize) -> [f64; 3] {
    let p = p as f64;
    [-2.0 * p, 4.0 * p / PI, 2.0 * p * p * p / 3.0 - 8.0 * p / (PI * PI)]
}

pub fn alpha_asymptotic(p: usize, h: RobinParam, order: usize) -> Result<AsymptoticEval> {
    if p == 0 {
        return Err(Error::InvalidParameter("expansion index p must be >= 1".into()));
    }
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidParameter(format!("order must be 1..=3, got {order}")));
    }
    let hv = h.h();
    if hv >= -1.0 {
        return Err(Error::InvalidParameter(format!("expansion needs h < -1, got {hv}")));
    }
    let mu = mu_coefficients(p);
    let mut value = p as f64 * PI;
    let mut hpow = 1.0;
    for m in mu.iter().take(order) {
        hpow *= hv;
        value += m / hpow;
    }
    Ok(AsymptoticEval { p, order, value })
}

// ---------------------------------------------------------------------------
// eigenfunctions

/// Unnormalised interval shape of one slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Cosh(f64),
    Sinh(f64),
    Cos(f64),
    Sin(f64),
    Linear,
}

impl Shape {
    pub fn parity(self) -> Parity {
        match self {
            Shape::Cosh(_) | Shape::Cos(_) => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// Value at x. Hyperbolic shapes are multiplied by e^{−β/2} so that they
    /// stay O(1) on the square for any depth; the factor is a positive
    /// constant, which does not affect zero sets.
    pub fn eval(self, x: f64) -> f64 {
        let t = x / PI;
        match self {
            Shape::Cosh(b) => 0.5 * ((b * (t - 0.5)).exp() + (-b * (t + 0.5)).exp()),
            Shape::Sinh(b) => 0.5 * ((b * (t - 0.5)).exp() - (-b * (t + 0.5)).exp()),
            Shape::Cos(a) => (a * t).cos(),
            Shape::Sin(a) => (a * t).sin(),
            Shape::Linear => t,
        }
    }

    /// Value without the e^{−β/2} scaling; the linear shape is u(x) = −x.
    pub fn eval_unscaled(self, x: f64) -> f64 {
        let t = x / PI;
        match self {
            Shape::Cosh(b) => (b * t).cosh(),
            Shape::Sinh(b) => (b * t).sinh(),
            Shape::Cos(a) => (a * t).cos(),
            Shape::Sin(a) => (a * t).sin(),
            Shape::Linear => critical_mode(x),
        }
    }

    /// Root carried by the shape (0 for the linear mode).
    pub fn root(self) -> f64 {
        match self {
            Shape::Cosh(r) | Shape::Sinh(r) | Shape::Cos(r) | Shape::Sin(r) => r,
            Shape::Linear => 0.0,
        }
    }

    /// First derivative of [`Shape::eval`].
    pub fn deriv(self, x: f64) -> f64 {
        let t = x / PI;
        match self {
            Shape::Cosh(b) => Shape::Sinh(b).eval(x) * b / PI,
            Shape::Sinh(b) => Shape::Cosh(b).eval(x) * b / PI,
            Shape::Cos(a) => -(a * t).sin() * a / PI,
            Shape::Sin(a) => (a * t).cos() * a / PI,
            Shape::Linear => 1.0 / PI,
        }
    }

    /// Second derivative of [`Shape::eval`].
    pub fn deriv2(self, x: f64) -> f64 {
        match self {
            Shape::Cosh(b) | Shape::Sinh(b) => self.eval(x) * b * b / (PI * PI),
            Shape::Cos(a) | Shape::Sin(a) => -self.eval(x) * a * a / (PI * PI),
            Shape::Linear => 0.0,
        }
    }
}

/// A solved slot of the pair convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotMode {
    pub slot: usize,
    pub root: f64,
    /// ±root², minus for hyperbolic slots (not divided by π²).
    pub signed_square: f64,
    pub shape: Shape,
}

pub fn slot_mode(slot: usize, h: RobinParam) -> Result<SlotMode> {
    slot_mode_with(slot, h, Tolerances::default())
}

pub fn slot_mode_with(slot: usize, h: RobinParam, tol: Tolerances) -> Result<SlotMode> {
    if slot == 1 && h.regime() == Regime::Critical {
        return Ok(SlotMode {
            slot,
            root: 0.0,
            signed_square: 0.0,
            shape: Shape::Linear,
        });
    }
    let mode = ModeIndex::for_slot(slot, h)?;
    let ev = solve_mode_with(mode, h, tol)?;
    let r = ev.root;
    let (signed_square, shape) = match (mode.kind, mode.parity()) {
        (ModeKind::Hyperbolic0, _) => (-r * r, Shape::Cosh(r)),
        (ModeKind::Hyperbolic1, _) => (-r * r, Shape::Sinh(r)),
        (ModeKind::Trig, Parity::Even) => (r * r, Shape::Cos(r)),
        (ModeKind::Trig, Parity::Odd) => (r * r, Shape::Sin(r)),
    };
    Ok(SlotMode {
        slot,
        root: r,
        signed_square,
        shape,
    })
}

/// cosh(a)/sinh(b) style ratios in log space when the arguments are large.
fn hyperbolic_ratio(num_cosh: bool, a: f64, den_sinh: bool, b: f64) -> f64 {
    if a.abs() <= 700.0 && b <= 700.0 {
        let n = if num_cosh { a.cosh() } else { a.sinh() };
        let d = if den_sinh { b.sinh() } else { b.cosh() };
        return n / d;
    }
    let sa = if num_cosh { 1.0 } else { a.signum() };
    let ea = (-2.0 * a.abs()).exp();
    let eb = (-2.0 * b).exp();
    let n = if num_cosh { 1.0 + ea } else { 1.0 - ea };
    let d = if den_sinh { 1.0 - eb } else { 1.0 + eb };
    sa * (a.abs() - b).exp() * n / d
}

/// Normalised interval eigenfunction.
///
/// The normalisations are 1/sinh(β₀/2), 1/cosh(β₁/2), 1/cos(α₁/2),
/// 1/sin(α_p/2) (p even) and 1/cos(α_p/2) (p odd ≥ 3). Both 1/sinh(β₀/2) and
/// 1/cos(α₁/2) blow up as h → 0⁻; values are returned without rescaling.
pub fn eval_mode(mode: ModeIndex, h: RobinParam, x: f64) -> Result<f64> {
    let r = solve_mode(mode, h)?.root;
    let t = r * x / PI;
    Ok(match (mode.kind, mode.parity()) {
        (ModeKind::Hyperbolic0, _) => hyperbolic_ratio(true, t, true, 0.5 * r),
        (ModeKind::Hyperbolic1, _) => hyperbolic_ratio(false, t, false, 0.5 * r),
        (ModeKind::Trig, Parity::Even) => t.cos() / (0.5 * r).sin(),
        (ModeKind::Trig, Parity::Odd) => t.sin() / (0.5 * r).cos(),
    })
}
