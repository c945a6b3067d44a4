//! Nodal structure of square eigenfunctions
//! Φ_θ(x, y) = cos θ · u_p(x)u_q(y) + sin θ · u_p(y)u_q(x).

mod boundary;
mod contour;
mod critical;
mod domains;
mod euler;
mod verdict;
mod wronskian;

pub use boundary::{boundary_cap, count_boundary_zeros, BoundaryZeros, EDGE_SAMPLES};
pub use contour::{interior_loops, nodal_polylines, Polyline};
pub use critical::{
    critical_thetas, find_critical_zeros, sigma_jk, sigma_jk_distinctness, theta_asymptotics, theta_for_zero,
    CriticalClass, CriticalPoint, CriticalZero, CriticalZeroSet, DroppedCandidate, SigmaComparison, ThetaAsymptotic,
    TAU_THETA,
};
pub use domains::{
    count_nodal_domains, count_nodal_domains_checked, count_sign_domains, DomainCount, NodalReport, MIN_RESOLUTION,
};
pub use euler::euler_bound;
pub use verdict::{courant_sharp_verdict, sweep_theta, LabelVerdict, ThetaSample, Verdict};
pub use wronskian::{wronskian, wronskian_zeros, WronskianZeros};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::Result;
use crate::interval::{slot_mode, RobinParam, Shape};
use crate::square::PairIndex;

/// Reduces an angle into [0, π); Φ_{θ+π} = −Φ_θ has the same nodal set.
pub fn reduce_theta(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    if t >= PI {
        0.0
    } else {
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenfunctionSpec {
    pub pair: PairIndex,
    pub h: RobinParam,
    /// Mixing angle in [0, π). For p = q there is a single product mode and
    /// θ is stored as π/4.
    pub theta: f64,
}

impl EigenfunctionSpec {
    pub fn new(pair: PairIndex, h: RobinParam, theta: f64) -> Self {
        let theta = if pair.p == pair.q {
            FRAC_PI_4
        } else {
            reduce_theta(theta)
        };
        EigenfunctionSpec { pair, h, theta }
    }

    /// True when Φ(−x, −y) = −Φ(x, y).
    pub fn is_odd(&self) -> bool {
        (self.pair.p + self.pair.q) % 2 == 1
    }
}

/// An eigenfunction with its interval shapes solved, ready for evaluation.
///
/// Hyperbolic shapes carry the factor e^{−β/2} (see [`Shape::eval`]); both
/// products contain the same two shapes, so Φ is rescaled by one positive
/// constant and its nodal set is unchanged.
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    pub spec: EigenfunctionSpec,
    pub sp: Shape,
    pub sq: Shape,
    pub c: f64,
    pub s: f64,
    /// max |Φ| estimated on a 129 × 129 grid.
    pub norm: f64,
}

impl Eigenfunction {
    pub fn new(spec: EigenfunctionSpec) -> Result<Self> {
        let sp = slot_mode(spec.pair.p, spec.h)?.shape;
        let sq = slot_mode(spec.pair.q, spec.h)?.shape;
        let (s, c) = spec.theta.sin_cos();
        let mut f = Eigenfunction {
            spec,
            sp,
            sq,
            c,
            s,
            norm: 1.0,
        };
        let n = 128;
        let mut m: f64 = 0.0;
        for i in 0..=n {
            for j in 0..=n {
                let x = -FRAC_PI_2 + PI * i as f64 / n as f64;
                let y = -FRAC_PI_2 + PI * j as f64 / n as f64;
                m = m.max(f.value(x, y).abs());
            }
        }
        f.norm = if m > 0.0 { m } else { 1.0 };
        Ok(f)
    }

    fn is_product(&self) -> bool {
        self.spec.pair.p == self.spec.pair.q
    }

    /// Combines the two products given separable factors.
    #[inline]
    pub fn combine(&self, px: f64, qy: f64, py: f64, qx: f64) -> f64 {
        if self.is_product() {
            px * py
        } else {
            self.c * px * qy + self.s * py * qx
        }
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.combine(self.sp.eval(x), self.sq.eval(y), self.sp.eval(y), self.sq.eval(x))
    }

    /// |cos θ·u_p(x)u_q(y)| + |sin θ·u_p(y)u_q(x)|, the size of the terms
    /// that cancel on the nodal set.
    #[inline]
    pub fn term_size(&self, px: f64, qy: f64, py: f64, qx: f64) -> f64 {
        if self.is_product() {
            (px * py).abs()
        } else {
            (self.c * px * qy).abs() + (self.s * py * qx).abs()
        }
    }

    /// Sign of Φ, with 0 when |Φ| is below `fraction` of the local term size.
    /// A relative test keeps exponentially small but nonzero values signed.
    pub fn sign_at(&self, x: f64, y: f64, fraction: f64) -> i8 {
        let (px, qy, py, qx) = (self.sp.eval(x), self.sq.eval(y), self.sp.eval(y), self.sq.eval(x));
        sign_rel(self.combine(px, qy, py, qx), fraction * self.term_size(px, qy, py, qx))
    }

    /// Whether Φ vanishes at (x, y) up to `fraction` of the local term size.
    pub fn vanishes_at(&self, x: f64, y: f64, fraction: f64) -> bool {
        self.sign_at(x, y, fraction) == 0
    }

    pub fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        let (px, dpx) = (self.sp.eval(x), self.sp.deriv(x));
        let (py, dpy) = (self.sp.eval(y), self.sp.deriv(y));
        let (qx, dqx) = (self.sq.eval(x), self.sq.deriv(x));
        let (qy, dqy) = (self.sq.eval(y), self.sq.deriv(y));
        if self.is_product() {
            return [dpx * py, px * dpy];
        }
        [
            self.c * dpx * qy + self.s * py * dqx,
            self.c * px * dqy + self.s * dpy * qx,
        ]
    }

    /// [[Φxx, Φxy], [Φxy, Φyy]]
    pub fn hessian(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let sp = self.sp;
        let sq = self.sq;
        let (px, dpx, ddpx) = (sp.eval(x), sp.deriv(x), sp.deriv2(x));
        let (py, dpy, ddpy) = (sp.eval(y), sp.deriv(y), sp.deriv2(y));
        let (qx, dqx, ddqx) = (sq.eval(x), sq.deriv(x), sq.deriv2(x));
        let (qy, dqy, ddqy) = (sq.eval(y), sq.deriv(y), sq.deriv2(y));
        if self.is_product() {
            return [[ddpx * py, dpx * dpy], [dpx * dpy, px * ddpy]];
        }
        let (c, s) = (self.c, self.s);
        let xx = c * ddpx * qy + s * py * ddqx;
        let xy = c * dpx * dqy + s * dpy * dqx;
        let yy = c * px * ddqy + s * ddpy * qx;
        [[xx, xy], [xy, yy]]
    }

    /// ΔΦ, which equals −λΦ for the square eigenvalue λ of the pair.
    pub fn laplacian(&self, x: f64, y: f64) -> f64 {
        let hs = self.hessian(x, y);
        hs[0][0] + hs[1][1]
    }
}

pub(crate) fn sign_rel(v: f64, eps: f64) -> i8 {
    if v > eps {
        1
    } else if v < -eps {
        -1
    } else {
        0
    }
}

/// Φ_θ at (x, y) in the unscaled form cos θ·u_p(x)u_q(y) + sin θ·u_p(y)u_q(x)
/// with u = cosh, sinh, cos, sin of root·x/π (and −x for the critical linear mode).
pub fn eval_phi(spec: &EigenfunctionSpec, x: f64, y: f64) -> Result<f64> {
    let sp = slot_mode(spec.pair.p, spec.h)?.shape;
    let sq = slot_mode(spec.pair.q, spec.h)?.shape;
    if spec.pair.p == spec.pair.q {
        return Ok(sp.eval_unscaled(x) * sp.eval_unscaled(y));
    }
    let (s, c) = spec.theta.sin_cos();
    Ok(c * sp.eval_unscaled(x) * sq.eval_unscaled(y) + s * sp.eval_unscaled(y) * sq.eval_unscaled(x))
}
