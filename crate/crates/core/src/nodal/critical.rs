//! Interior critical zeros: points where Φ and ∇Φ both vanish.
//!
//! For the pair (0, q), write C = cosh(β₀·/π) and K = cos(α_q·/π). A point
//! (x, y) is a critical zero of Φ_θ exactly when
//!   tan θ = −C(x)K(y) / (C(y)K(x))      (Φ = 0)
//!   tan θ = −C′(x)K(y) / (C(y)K′(x))    (∂ₓΦ = 0, x ≠ 0)
//!   tan θ = −C(x)K′(y) / (C′(y)K(x))    (∂ᵧΦ = 0, y ≠ 0)
//! agree, which forces both coordinates onto zeros of the Wronskian W.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{wronskian::wronskian_zeros, Eigenfunction, WronskianZeros};
use crate::error::{Error, Result};
use crate::interval::{slot_mode, RobinParam, Shape};

/// Largest disagreement, mod π, tolerated between the three θ formulas.
pub const TAU_THETA: f64 = 1e-8;
const DEDUP_RADIUS: f64 = 1e-7;
const ZERO_FRACTION: f64 = 1e-8;
const NU_RADIUS: f64 = 1e-3;
const NU_ANGLES: usize = 64;

/// A critical zero found by Newton's method on ∇Φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalZero {
    pub x: f64,
    pub y: f64,
    /// Number of nodal arcs meeting at the point (sign changes on a small circle).
    pub nu: usize,
    pub hessian_ok: bool,
}

fn newton(phi: &Eigenfunction, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
    for _ in 0..60 {
        let g = phi.gradient(x, y);
        let hs = phi.hessian(x, y);
        let det = hs[0][0] * hs[1][1] - hs[0][1] * hs[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dx = (hs[1][1] * g[0] - hs[0][1] * g[1]) / det;
        let dy = (hs[0][0] * g[1] - hs[1][0] * g[0]) / det;
        x -= dx;
        y -= dy;
        if x.abs() >= FRAC_PI_2 || y.abs() >= FRAC_PI_2 {
            return None;
        }
        if dx.abs() + dy.abs() < 1e-14 {
            return Some((x, y));
        }
    }
    None
}

fn nu_at(phi: &Eigenfunction, x: f64, y: f64) -> usize {
    let mut signs = Vec::with_capacity(NU_ANGLES);
    for k in 0..NU_ANGLES {
        let a = 2.0 * PI * (k as f64 + 0.5) / NU_ANGLES as f64;
        let v = phi.value(x + NU_RADIUS * a.cos(), y + NU_RADIUS * a.sin());
        if v != 0.0 {
            signs.push(v > 0.0);
        }
    }
    if signs.is_empty() {
        return 0;
    }
    (0..signs.len())
        .filter(|&k| signs[k] != signs[(k + 1) % signs.len()])
        .count()
}

/// Interior critical zeros of Φ, located by Newton's method on the gradient
/// from a uniform grid of seeds.
pub fn find_critical_zeros(phi: &Eigenfunction) -> Vec<CriticalZero> {
    let m = phi.spec.pair.p.max(phi.spec.pair.q);
    let n = 4 * (m + 2);
    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let x0 = -FRAC_PI_2 + PI * (i as f64 + 0.5) / n as f64;
            let y0 = -FRAC_PI_2 + PI * (j as f64 + 0.5) / n as f64;
            let Some((x, y)) = newton(phi, x0, y0) else { continue };
            if !phi.vanishes_at(x, y, ZERO_FRACTION) {
                continue;
            }
            if found.iter().any(|&(a, b)| (a - x).hypot(b - y) < DEDUP_RADIUS) {
                continue;
            }
            found.push((x, y));
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    found
        .into_iter()
        .map(|(x, y)| {
            let hs = phi.hessian(x, y);
            let det = hs[0][0] * hs[1][1] - hs[0][1] * hs[1][0];
            let scale = hs[0][0].abs().max(hs[0][1].abs()).max(hs[1][1].abs());
            CriticalZero {
                x,
                y,
                nu: nu_at(phi, x, y),
                hessian_ok: det.abs() > 1e-12 * scale * scale,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalClass {
    /// (±γ, 0), γ ≠ 0.
    AxisX,
    /// (0, ±γ), γ ≠ 0.
    AxisY,
    /// |x| = |y|, including the origin.
    Diagonal,
    /// (±γ_i, ±γ_j) with i ≠ j, indices of the positive Wronskian zeros.
    Grid(usize, usize),
    /// A point with a coordinate at ±π/2, where the Robin condition already
    /// makes the normal derivative vanish together with Φ.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub x: f64,
    pub y: f64,
    pub class: CriticalClass,
    /// The θ ∈ [0, π) at which (x, y) is a critical zero.
    pub theta: f64,
    pub tan_theta: f64,
    /// m₁₁ = (β₀² + α_q²)π⁻² cos θ C(x)K(y) ≠ 0.
    pub hessian_ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DroppedCandidate {
    pub x: f64,
    pub y: f64,
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalZeroSet {
    pub q: usize,
    pub h: f64,
    /// Interior points of the Wronskian grid, closed under reflections.
    pub points: Vec<CriticalPoint>,
    /// Grid points on the boundary of the square.
    pub boundary: Vec<CriticalPoint>,
    pub dropped: Vec<DroppedCandidate>,
    pub wronskian: WronskianZeros,
}

impl CriticalZeroSet {
    /// Distinct critical θ values (interior and boundary), sorted.
    pub fn thetas(&self) -> Vec<f64> {
        let mut t: Vec<f64> = self.points.iter().chain(&self.boundary).map(|p| p.theta).collect();
        t.sort_by(f64::total_cmp);
        t.dedup_by(|a, b| (*a - *b).abs() < TAU_THETA);
        t
    }

    /// Interior points assigned to θ.
    pub fn points_at(&self, theta: f64) -> Vec<CriticalPoint> {
        self.points
            .iter()
            .copied()
            .filter(|p| angle_distance(p.theta, theta) < TAU_THETA)
            .collect()
    }
}

/// Distance between two angles modulo π.
fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// θ ∈ [0, π) with cos θ·v₀ + sin θ·v₁ = 0.
fn theta_annihilating(v: [f64; 2]) -> f64 {
    let t = (-v[0]).atan2(v[1]).rem_euclid(PI);
    if t >= PI {
        0.0
    } else {
        t
    }
}

struct Shapes {
    c: Shape,
    k: Shape,
    beta: f64,
    alpha: f64,
}

impl Shapes {
    fn new(q: usize, h: RobinParam) -> Result<Self> {
        let c = slot_mode(0, h)?.shape;
        let k = slot_mode(q, h)?.shape;
        Ok(Shapes {
            c,
            k,
            beta: c.root(),
            alpha: k.root(),
        })
    }

    /// θ for the point and the spread between the usable formulas.
    fn theta(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let (c, k) = (self.c, self.k);
        let (cx, cy, kx, ky) = (c.eval(x), c.eval(y), k.eval(x), k.eval(y));
        let (dcx, dcy, dkx, dky) = (c.deriv(x), c.deriv(y), k.deriv(x), k.deriv(y));
        let a = [cx * ky, cy * kx];
        let b = [dcx * ky, cy * dkx];
        let cc = [cx * dky, dcy * kx];
        let scale_a = a[0].abs() + a[1].abs();
        let scale_d = (b[0].abs() + b[1].abs()).max(cc[0].abs() + cc[1].abs());
        let mut thetas = vec![];
        if scale_a > 0.0 {
            thetas.push(theta_annihilating(a));
        }
        for (v, off_axis) in [(b, x != 0.0), (cc, y != 0.0)] {
            if off_axis && v[0].abs() + v[1].abs() > 1e-12 * scale_d {
                thetas.push(theta_annihilating(v));
            }
        }
        let theta = thetas[0];
        let spread = thetas.iter().map(|&t| angle_distance(t, theta)).fold(0.0, f64::max);
        let tan = -a[0] / a[1];
        (theta, tan, spread)
    }

    fn m11_nonzero(&self, x: f64, y: f64, theta: f64) -> bool {
        let (c, k) = (self.c, self.k);
        let m11 = (self.beta.powi(2) + self.alpha.powi(2)) / (PI * PI) * theta.cos() * c.eval(x) * k.eval(y);
        let scale = (self.beta.powi(2) + self.alpha.powi(2)) / (PI * PI)
            * (c.eval(x) * k.eval(y)).abs().max((c.eval(y) * k.eval(x)).abs());
        m11.abs() > 1e-9 * scale
    }
}

fn check_q(q: usize) -> Result<()> {
    if q < 4 || q % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "critical θ analysis needs even q >= 4, got {q}"
        )));
    }
    Ok(())
}

/// θ ∈ [0, π) at which (x, y) is a critical zero of Φ_θ for the pair (0, q),
/// with tan θ from the first formula.
pub fn theta_for_zero(q: usize, h: RobinParam, x: f64, y: f64) -> Result<(f64, f64)> {
    let shapes = Shapes::new(q, h)?;
    let (theta, tan, spread) = shapes.theta(x, y);
    if spread > TAU_THETA {
        return Err(Error::InconsistentTheta { x, y, spread });
    }
    Ok((theta, tan))
}

fn classify(x: f64, y: f64, positive: &[f64]) -> CriticalClass {
    let index = |v: f64| {
        positive
            .iter()
            .position(|&g| (g - v.abs()).abs() < 1e-12)
            .map_or(0, |i| i + 1)
    };
    let (i, j) = (index(x), index(y));
    if x.abs() == FRAC_PI_2 || y.abs() == FRAC_PI_2 {
        CriticalClass::Boundary
    } else if i == j {
        CriticalClass::Diagonal
    } else if j == 0 {
        CriticalClass::AxisX
    } else if i == 0 {
        CriticalClass::AxisY
    } else {
        CriticalClass::Grid(i, j)
    }
}

/// Critical θ values of the pair (0, q) from the Wronskian grid, together with
/// the boundary grid points (one coordinate at ±π/2).
pub fn critical_thetas(q: usize, h: RobinParam) -> Result<CriticalZeroSet> {
    check_q(q)?;
    let wz = wronskian_zeros(q, h)?;
    let shapes = Shapes::new(q, h)?;
    let positive = wz.positive();
    let interior = wz.zeros.clone();
    let mut extended = interior.clone();
    extended.insert(0, -FRAC_PI_2);
    extended.push(FRAC_PI_2);

    let mut points = Vec::new();
    let mut boundary = Vec::new();
    let mut dropped = Vec::new();
    for &x in &extended {
        for &y in &extended {
            let (theta, tan_theta, spread) = shapes.theta(x, y);
            if spread > TAU_THETA {
                dropped.push(DroppedCandidate { x, y, spread });
                continue;
            }
            let class = classify(x, y, &positive);
            let point = CriticalPoint {
                x,
                y,
                class,
                theta,
                tan_theta,
                hessian_ok: shapes.m11_nonzero(x, y, theta),
            };
            if class == CriticalClass::Boundary {
                boundary.push(point);
            } else {
                points.push(point);
            }
        }
    }
    Ok(CriticalZeroSet {
        q,
        h: h.h(),
        points,
        boundary,
        dropped,
        wronskian: wz,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaAsymptotic {
    pub q: usize,
    pub h: f64,
    pub j: usize,
    pub gamma_j: f64,
    pub beta0: f64,
    pub alpha_q: f64,
    /// (−1)^{j+1} β₀/(2α_q cos arctan ε) · e^{β₀γ_j/π}, ε = α_q/β₀.
    pub tan_asymptotic: f64,
    /// −cosh(β₀γ_j/π)/cos(α_qγ_j/π): the first formula at (γ_j, 0).
    pub tan_exact: f64,
}

/// Large-|h| behaviour of tan θ_j, the critical θ of the axis point (γ_j, 0).
pub fn theta_asymptotics(q: usize, h: RobinParam, j: usize) -> Result<ThetaAsymptotic> {
    check_q(q)?;
    if h.h() > -10.0 {
        return Err(Error::Regime(format!("θ asymptotics need h <= -10, got {}", h.h())));
    }
    if j == 0 || j > (q - 2) / 2 {
        return Err(Error::InvalidParameter(format!(
            "j must lie in 1..={}, got {j}",
            (q - 2) / 2
        )));
    }
    let wz = wronskian_zeros(q, h)?;
    let gamma_j = wz.positive()[j - 1];
    let (beta0, alpha_q) = (wz.beta0, wz.alpha_q);
    let eps = alpha_q / beta0;
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    let tan_asymptotic = sign * beta0 / (2.0 * alpha_q * eps.atan().cos()) * (beta0 * gamma_j / PI).exp();
    let tan_exact = -(beta0 * gamma_j / PI).cosh() / (alpha_q * gamma_j / PI).cos();
    Ok(ThetaAsymptotic {
        q,
        h: h.h(),
        j,
        gamma_j,
        beta0,
        alpha_q,
        tan_asymptotic,
        tan_exact,
    })
}

/// σ_jk = log((−1)^{j−k} tan θ_j / tan θ_k).
pub fn sigma_jk(tan_j: f64, tan_k: f64, j: usize, k: usize) -> f64 {
    let sign = if (j + k).is_multiple_of(2) { 1.0 } else { -1.0 };
    (sign * tan_j / tan_k).ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaComparison {
    pub j: usize,
    pub k: usize,
    pub j2: usize,
    pub k2: usize,
    /// σ_jk − σ_j′k′.
    pub difference: f64,
    /// (β₀/α_q)(j − k)π, the leading term shared by both.
    pub leading_term: f64,
}

/// Compares σ_jk with σ_j′k′ over all index pairs with j < k, j′ < k′,
/// j − k = j′ − k′ and j < j′; each difference should be positive.
pub fn sigma_jk_distinctness(q: usize, h: RobinParam) -> Result<Vec<SigmaComparison>> {
    let n = (q.max(4) - 2) / 2;
    let tans: Vec<f64> = (1..=n)
        .map(|j| theta_asymptotics(q, h, j).map(|t| t.tan_exact))
        .collect::<Result<_>>()?;
    let (beta, alpha) = {
        let t = theta_asymptotics(q, h, 1)?;
        (t.beta0, t.alpha_q)
    };
    let mut out = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            let s = sigma_jk(tans[j - 1], tans[k - 1], j, k);
            for j2 in j + 1..=n {
                let k2 = j2 + (k - j);
                if k2 > n {
                    continue;
                }
                let s2 = sigma_jk(tans[j2 - 1], tans[k2 - 1], j2, k2);
                out.push(SigmaComparison {
                    j,
                    k,
                    j2,
                    k2,
                    difference: s - s2,
                    leading_term: beta / alpha * (j as f64 - k as f64) * PI,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodal::EigenfunctionSpec;
    use crate::square::PairIndex;
    use std::f64::consts::FRAC_PI_4;

    fn rp(h: f64) -> RobinParam {
        RobinParam::new(h).unwrap()
    }

    #[test]
    fn diagonal_points_give_three_quarters() {
        let set = critical_thetas(4, rp(-4.0)).unwrap();
        for p in set.points.iter().filter(|p| p.class == CriticalClass::Diagonal) {
            assert!((p.theta - 3.0 * FRAC_PI_4).abs() < 1e-12, "{p:?}");
        }
        assert!(set.dropped.is_empty());
        assert_eq!(set.points.len(), 9);
    }

    #[test]
    fn first_boundary_theta() {
        let set = critical_thetas(4, rp(-4.0)).unwrap();
        let g = set.wronskian.positive()[0];
        let p = set.boundary.iter().find(|p| p.x == g && p.y == FRAC_PI_2).unwrap();
        assert!((p.theta - 0.0264).abs() < 5e-4, "{}", p.theta);
    }

    #[test]
    fn axis_points_are_complementary() {
        let set = critical_thetas(4, rp(-4.0)).unwrap();
        let g = set.wronskian.positive()[0];
        let tx = set.points.iter().find(|p| p.x == g && p.y == 0.0).unwrap().theta;
        let ty = set.points.iter().find(|p| p.x == 0.0 && p.y == g).unwrap().theta;
        assert!(angle_distance(ty, FRAC_PI_2 - tx) < 1e-12);
    }

    #[test]
    fn critical_points_are_zeros_of_phi_and_gradient() {
        let set = critical_thetas(6, rp(-10.0)).unwrap();
        for p in &set.points {
            let spec = EigenfunctionSpec::new(PairIndex::new(0, 6), rp(-10.0), p.theta);
            let f = Eigenfunction::new(spec).unwrap();
            let g = f.gradient(p.x, p.y);
            assert!(f.value(p.x, p.y).abs() < 1e-10 * f.norm);
            assert!(g[0].abs() + g[1].abs() < 1e-9 * f.norm);
            // trace of the Hessian vanishes with Φ
            assert!(f.laplacian(p.x, p.y).abs() < 1e-8 * f.norm);
        }
    }

    #[test]
    fn newton_finds_the_three_quarter_saddles() {
        let spec = EigenfunctionSpec::new(PairIndex::new(0, 4), rp(-4.0), 3.0 * FRAC_PI_4);
        let f = Eigenfunction::new(spec).unwrap();
        let zeros = find_critical_zeros(&f);
        assert_eq!(zeros.len(), 5, "{zeros:?}");
        assert!(zeros.iter().all(|z| z.nu == 4 && z.hessian_ok));
    }

    #[test]
    fn asymptotic_sign_alternates() {
        for j in 1..=2 {
            let t = theta_asymptotics(6, rp(-20.0), j).unwrap();
            let expected = if j % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(t.tan_exact.signum(), expected);
            assert_eq!(t.tan_asymptotic.signum(), expected);
            assert!((t.tan_exact / t.tan_asymptotic - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn sigma_ordering() {
        let cmp = sigma_jk_distinctness(8, rp(-40.0)).unwrap();
        assert!(!cmp.is_empty());
        assert!(cmp.iter().all(|c| c.difference > 0.0));
    }
}
