//! Zeros of Φ on the boundary of the square, counted with multiplicity.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{sign_rel, Eigenfunction};
use crate::error::{Error, Result};
use crate::roots::bisect;
use crate::square::PairIndex;

/// Samples per open edge.
pub const EDGE_SAMPLES: usize = 4096;
const CORNER_RADIUS: f64 = 1e-3;
const CORNER_ANGLES: usize = 64;
/// |Φ| below this fraction of its local term size is treated as zero.
const ZERO_FRACTION: f64 = 1e-10;
/// Same-sign local minima of |Φ| below this fraction of the local term size
/// are checked for tangency.
const TANGENCY_PROBE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Bottom,
    Right,
    Top,
    Left,
}

const EDGES: [Edge; 4] = [Edge::Bottom, Edge::Right, Edge::Top, Edge::Left];

impl Edge {
    /// Point on the edge at parameter t ∈ (−π/2, π/2).
    fn point(self, t: f64) -> (f64, f64) {
        match self {
            Edge::Bottom => (t, -FRAC_PI_2),
            Edge::Right => (FRAC_PI_2, t),
            Edge::Top => (t, FRAC_PI_2),
            Edge::Left => (-FRAC_PI_2, t),
        }
    }

    /// The two corners closing this edge.
    fn corners(self) -> [(f64, f64); 2] {
        [self.point(-FRAC_PI_2), self.point(FRAC_PI_2)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryZeros {
    /// Per edge (bottom, right, top, left): zero locations (x, y) and multiplicity.
    pub edges: [Vec<((f64, f64), usize)>; 4],
    /// Vanishing corners and the number of nodal curves ending there.
    pub corners: Vec<((f64, f64), usize)>,
    pub caps: [usize; 4],
    pub total: usize,
}

impl BoundaryZeros {
    /// ρ for every boundary zero, for use in Euler's formula.
    pub fn rho(&self) -> Vec<usize> {
        self.edges
            .iter()
            .flat_map(|e| e.iter().map(|&(_, m)| m))
            .chain(self.corners.iter().map(|&(_, r)| r))
            .collect()
    }
}

/// Sturm cap per open edge: the restriction of Φ to an edge combines interval
/// eigenfunctions up to index max(p, q), so it has at most max(p, q) zeros.
/// For (0, q) an edge with a vanishing corner loses one more.
pub fn boundary_cap(pair: PairIndex, corner_vanishes: bool) -> usize {
    let cap = pair.p.max(pair.q);
    if pair.p == 0 && corner_vanishes {
        cap.saturating_sub(1)
    } else {
        cap
    }
}

fn term_size(phi: &Eigenfunction, x: f64, y: f64) -> f64 {
    phi.term_size(phi.sp.eval(x), phi.sq.eval(y), phi.sp.eval(y), phi.sq.eval(x))
}

fn edge_zeros(phi: &Eigenfunction, edge: Edge, n: usize) -> Result<Vec<((f64, f64), usize)>> {
    let f = |t: f64| {
        let (x, y) = edge.point(t);
        phi.value(x, y)
    };
    let size = |t: f64| {
        let (x, y) = edge.point(t);
        term_size(phi, x, y)
    };
    let ts: Vec<f64> = (1..n).map(|k| -FRAC_PI_2 + PI * k as f64 / n as f64).collect();
    let vs: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let sizes: Vec<f64> = ts.iter().map(|&t| size(t)).collect();
    let sg: Vec<i8> = vs
        .iter()
        .zip(&sizes)
        .map(|(&v, &m)| sign_rel(v, ZERO_FRACTION * m))
        .collect();

    let mut out = Vec::new();
    let nonzero: Vec<usize> = (0..sg.len()).filter(|&k| sg[k] != 0).collect();
    for w in nonzero.windows(2) {
        let (k1, k2) = (w[0], w[1]);
        if sg[k1] != sg[k2] {
            let t = if k2 == k1 + 1 {
                bisect(f, ts[k1], ts[k2], 1e-14)?
            } else {
                ts[(k1 + k2) / 2]
            };
            out.push((edge.point(t), 1));
        } else if k2 > k1 + 1 {
            // touched zero between two samples of the same sign
            out.push((edge.point(ts[(k1 + k2) / 2]), 2));
        }
    }

    // same-signed dips that may graze zero between samples
    for k in 1..vs.len() - 1 {
        let probe = TANGENCY_PROBE * sizes[k];
        let (l, m, r) = (vs[k - 1], vs[k], vs[k + 1]);
        if sg[k - 1] == 0 || sg[k] != sg[k - 1] || sg[k + 1] != sg[k] {
            continue;
        }
        if !(m.abs() <= l.abs() && m.abs() <= r.abs() && m.abs() < probe) {
            continue;
        }
        let s = sg[k] as f64;
        let (mut a, mut b) = (ts[k - 1], ts[k + 1]);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if s * f(c) < s * f(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let t = 0.5 * (a + b);
        if s * f(t) <= ZERO_FRACTION * size(t) {
            out.push((edge.point(t), 2));
        }
    }
    out.sort_by(|a, b| {
        let ka = a.0 .0 + a.0 .1;
        let kb = b.0 .0 + b.0 .1;
        ka.total_cmp(&kb)
    });
    Ok(out)
}

/// Number of nodal curves entering the square at a vanishing corner.
fn corner_rho(phi: &Eigenfunction, corner: (f64, f64)) -> usize {
    let (cx, cy) = corner;
    // inward quarter arc
    let (sx, sy) = (-cx.signum(), -cy.signum());
    let mut prev = 0i8;
    let mut changes = 0;
    for k in 0..CORNER_ANGLES {
        let a = FRAC_PI_2 * (k as f64 + 0.5) / CORNER_ANGLES as f64;
        let v = phi.value(cx + sx * CORNER_RADIUS * a.cos(), cy + sy * CORNER_RADIUS * a.sin());
        let s = sign_rel(v, 0.0);
        if s != 0 {
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
    }
    changes
}

fn count_with(phi: &Eigenfunction, n: usize) -> Result<BoundaryZeros> {
    let corner_zero = |c: (f64, f64)| phi.vanishes_at(c.0, c.1, 10.0 * ZERO_FRACTION);
    let mut edges: [Vec<((f64, f64), usize)>; 4] = Default::default();
    let mut caps = [0; 4];
    for (i, &edge) in EDGES.iter().enumerate() {
        edges[i] = edge_zeros(phi, edge, n)?;
        let vanishing = edge.corners().iter().any(|&c| corner_zero(c));
        caps[i] = boundary_cap(phi.spec.pair, vanishing);
    }
    let mut corners = Vec::new();
    for c in [
        (-FRAC_PI_2, -FRAC_PI_2),
        (FRAC_PI_2, -FRAC_PI_2),
        (FRAC_PI_2, FRAC_PI_2),
        (-FRAC_PI_2, FRAC_PI_2),
    ] {
        if corner_zero(c) {
            corners.push((c, corner_rho(phi, c)));
        }
    }
    let total = edges.iter().flat_map(|e| e.iter().map(|&(_, m)| m)).sum::<usize>()
        + corners.iter().map(|&(_, r)| r).sum::<usize>();
    Ok(BoundaryZeros {
        edges,
        corners,
        caps,
        total,
    })
}

/// Counts boundary zeros (with multiplicity) and checks the per-edge Sturm
/// caps, retrying once at double sampling before reporting a violation.
pub fn count_boundary_zeros(phi: &Eigenfunction) -> Result<BoundaryZeros> {
    let over = |b: &BoundaryZeros| {
        (0..4)
            .map(|i| (b.edges[i].iter().map(|&(_, m)| m).sum::<usize>(), b.caps[i]))
            .find(|&(count, cap)| count > cap)
    };
    let first = count_with(phi, EDGE_SAMPLES)?;
    if over(&first).is_none() {
        return Ok(first);
    }
    let second = count_with(phi, 2 * EDGE_SAMPLES)?;
    match over(&second) {
        None => Ok(second),
        Some((count, cap)) => Err(Error::CapViolation { count, cap }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::RobinParam;
    use crate::nodal::EigenfunctionSpec;
    use std::f64::consts::FRAC_PI_4;

    fn phi(p: usize, q: usize, h: f64, theta: f64) -> Eigenfunction {
        let spec = EigenfunctionSpec::new(PairIndex::new(p, q), RobinParam::new(h).unwrap(), theta);
        Eigenfunction::new(spec).unwrap()
    }

    #[test]
    fn pair_0_2_quarter_has_eight() {
        for h in [-0.1, -1.0, -3.0] {
            let b = count_boundary_zeros(&phi(0, 2, h, FRAC_PI_4)).unwrap();
            assert_eq!(b.total, 8, "h={h}");
            assert!(b.corners.is_empty());
        }
    }

    #[test]
    fn caps() {
        assert_eq!(boundary_cap(PairIndex::new(0, 4), false), 4);
        assert_eq!(boundary_cap(PairIndex::new(0, 4), true), 3);
        assert_eq!(boundary_cap(PairIndex::new(1, 3), true), 3);
    }

    #[test]
    fn product_mode_counts() {
        // (1,1): sinh·sinh vanishes once per edge at its midpoint
        let b = count_boundary_zeros(&phi(1, 1, -1.0, 0.0)).unwrap();
        assert_eq!(b.total, 4);
    }
}
