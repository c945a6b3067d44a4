//! Nodal-domain counting on a uniform grid with union-find.
//!
//! Vertices where |Φ| is below 10⁻¹⁰ of the size of its two cancelling terms
//! are treated as lying on the nodal set and never join a domain. Same-signed vertices are joined along grid
//! edges (4-connectivity). A cell whose two same-signed diagonal corners are
//! not joined through its edges is ambiguous; such cells are resampled on a
//! finer local grid to decide whether that diagonal connects. Each refinement
//! level multiplies the local resolution by four, and the count is accepted
//! once two successive levels agree.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use super::{
    boundary::count_boundary_zeros, contour::interior_loops_on, critical::find_critical_zeros, euler::euler_bound,
    sign_rel, Eigenfunction, EigenfunctionSpec,
};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

pub const MIN_RESOLUTION: usize = 256;
const MAX_LEVEL: u32 = 3;
const ZERO_FRACTION: f64 = 1e-10;

/// Sampled values and signs on the (R+1)² vertex grid.
pub(crate) struct SignGrid {
    pub r: usize,
    pub xs: Vec<f64>,
    pub vals: Vec<f64>,
    pub signs: Vec<i8>,
}

impl SignGrid {
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * (self.r + 1) + i
    }
}

/// x_i = (2i − R)·(π/2)/R, exactly antisymmetric about the centre.
pub(crate) fn grid_coords(r: usize) -> Vec<f64> {
    (0..=r)
        .map(|i| (2.0 * i as f64 - r as f64) * (FRAC_PI_2 / r as f64))
        .collect()
}

pub(crate) fn sample(phi: &Eigenfunction, r: usize) -> SignGrid {
    let xs = grid_coords(r);
    let p: Vec<f64> = xs.iter().map(|&x| phi.sp.eval(x)).collect();
    let q: Vec<f64> = xs.iter().map(|&x| phi.sq.eval(x)).collect();
    let n = r + 1;
    let mut vals = vec![0.0; n * n];
    let mut signs = vec![0i8; n * n];
    vals.par_chunks_mut(n)
        .zip(signs.par_chunks_mut(n))
        .enumerate()
        .for_each(|(j, (row, srow))| {
            for i in 0..n {
                let v = phi.combine(p[i], q[j], p[j], q[i]);
                row[i] = v;
                srow[i] = sign_rel(v, ZERO_FRACTION * phi.term_size(p[i], q[j], p[j], q[i]));
            }
        });
    SignGrid { r, xs, vals, signs }
}

fn base_union_find(g: &SignGrid) -> UnionFind {
    let n = g.r + 1;
    let mut uf = UnionFind::new(n * n);
    for j in 0..n {
        for i in 0..n {
            let k = g.idx(i, j);
            let s = g.signs[k];
            if s == 0 {
                continue;
            }
            if i + 1 < n && g.signs[k + 1] == s {
                uf.union(k, k + 1);
            }
            if j + 1 < n && g.signs[k + n] == s {
                uf.union(k, k + n);
            }
        }
    }
    uf
}

/// An ambiguous diagonal: cell (i, j) and whether it is the a–c diagonal
/// (lower-left to upper-right) or the b–d one.
#[derive(Debug, Clone, Copy)]
struct Ambiguity {
    i: usize,
    j: usize,
    rising: bool,
}

fn ambiguous_cells(g: &SignGrid) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    for j in 0..g.r {
        for i in 0..g.r {
            let a = g.signs[g.idx(i, j)];
            let b = g.signs[g.idx(i + 1, j)];
            let c = g.signs[g.idx(i + 1, j + 1)];
            let d = g.signs[g.idx(i, j + 1)];
            if a != 0 && a == c && b != a && d != a {
                out.push(Ambiguity { i, j, rising: true });
            }
            if b != 0 && b == d && a != b && c != b {
                out.push(Ambiguity { i, j, rising: false });
            }
        }
    }
    out
}

/// Whether the ambiguous diagonal connects inside the cell, judged on an
/// (n+1)² local grid.
fn diagonal_connects(phi: &Eigenfunction, g: &SignGrid, amb: Ambiguity, n: usize) -> bool {
    let (x0, x1) = (g.xs[amb.i], g.xs[amb.i + 1]);
    let (y0, y1) = (g.xs[amb.j], g.xs[amb.j + 1]);
    let coord = |lo: f64, hi: f64, k: usize| {
        if k == 0 {
            lo
        } else if k == n {
            hi
        } else {
            lo + (hi - lo) * k as f64 / n as f64
        }
    };
    let m = n + 1;
    let mut signs = vec![0i8; m * m];
    for b in 0..m {
        let y = coord(y0, y1, b);
        for a in 0..m {
            let x = coord(x0, x1, a);
            signs[b * m + a] = phi.sign_at(x, y, ZERO_FRACTION);
        }
    }
    // corners keep the signs the coarse grid saw
    signs[0] = g.signs[g.idx(amb.i, amb.j)];
    signs[n] = g.signs[g.idx(amb.i + 1, amb.j)];
    signs[n * m + n] = g.signs[g.idx(amb.i + 1, amb.j + 1)];
    signs[n * m] = g.signs[g.idx(amb.i, amb.j + 1)];
    let mut uf = UnionFind::new(m * m);
    for b in 0..m {
        for a in 0..m {
            let k = b * m + a;
            let s = signs[k];
            if s == 0 {
                continue;
            }
            if a + 1 < m && signs[k + 1] == s {
                uf.union(k, k + 1);
            }
            if b + 1 < m && signs[k + m] == s {
                uf.union(k, k + m);
            }
        }
    }
    if amb.rising {
        uf.connected(0, n * m + n)
    } else {
        uf.connected(n, n * m)
    }
}

fn count_components(g: &SignGrid, uf: &mut UnionFind) -> usize {
    (0..g.signs.len())
        .filter(|&k| g.signs[k] != 0 && uf.find(k) == k)
        .count()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainCount {
    pub domains: usize,
    /// Refinement level at which the count was accepted (0: no ambiguous cells).
    pub level: u32,
    pub ambiguous_cells: usize,
    /// Counts at levels 1, 2, ... (empty when no refinement was needed).
    pub level_counts: Vec<usize>,
}

pub(crate) fn count_on_grid(phi: &Eigenfunction, g: &SignGrid) -> Result<DomainCount> {
    let mut base = base_union_find(g);
    let amb = ambiguous_cells(g);
    if amb.is_empty() {
        return Ok(DomainCount {
            domains: count_components(g, &mut base),
            level: 0,
            ambiguous_cells: 0,
            level_counts: vec![],
        });
    }
    let mut counts = Vec::new();
    for level in 1..=MAX_LEVEL {
        let n = 4usize.pow(level);
        let joins: Vec<bool> = amb.par_iter().map(|&a| diagonal_connects(phi, g, a, n)).collect();
        let mut uf = base.clone();
        for (a, &join) in amb.iter().zip(&joins) {
            if join {
                let (p, q) = if a.rising {
                    (g.idx(a.i, a.j), g.idx(a.i + 1, a.j + 1))
                } else {
                    (g.idx(a.i + 1, a.j), g.idx(a.i, a.j + 1))
                };
                uf.union(p, q);
            }
        }
        counts.push(count_components(g, &mut uf));
        let k = counts.len();
        if k >= 2 && counts[k - 1] == counts[k - 2] {
            return Ok(DomainCount {
                domains: counts[k - 1],
                level,
                ambiguous_cells: amb.len(),
                level_counts: counts,
            });
        }
    }
    Err(Error::Unresolved { counts })
}

/// Number of nodal domains of Φ on an (R+1)² grid.
pub fn count_sign_domains(phi: &Eigenfunction, resolution: usize) -> Result<DomainCount> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(format!(
            "resolution must be >= {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    count_on_grid(phi, &sample(phi, resolution))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodalReport {
    pub spec: EigenfunctionSpec,
    pub domains: usize,
    /// Boundary zeros counted with multiplicity.
    pub boundary_zeros: usize,
    pub interior_critical_zeros: usize,
    /// b₁ − b₀: nodal-set components that do not reach the boundary.
    pub interior_loops: usize,
    pub euler_upper_bound: i64,
    pub grid_resolution: usize,
    pub refinement_level: u32,
}

pub fn count_nodal_domains(spec: EigenfunctionSpec, resolution: usize) -> Result<NodalReport> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(format!(
            "resolution must be >= {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    let phi = Eigenfunction::new(spec)?;
    let grid = sample(&phi, resolution);
    let count = count_on_grid(&phi, &grid)?;
    let boundary = count_boundary_zeros(&phi)?;
    let critical = find_critical_zeros(&phi);
    let loops = interior_loops_on(&grid);
    let nus: Vec<usize> = critical.iter().map(|c| c.nu).collect();
    let euler = euler_bound(1, 1 + loops, &nus, &boundary.rho());
    Ok(NodalReport {
        spec,
        domains: count.domains,
        boundary_zeros: boundary.total,
        interior_critical_zeros: critical.len(),
        interior_loops: loops,
        euler_upper_bound: euler,
        grid_resolution: resolution,
        refinement_level: count.level,
    })
}

/// [`count_nodal_domains`] at R, confirmed by a domain count at 2R.
pub fn count_nodal_domains_checked(spec: EigenfunctionSpec, resolution: usize) -> Result<NodalReport> {
    let report = count_nodal_domains(spec, resolution)?;
    let phi = Eigenfunction::new(spec)?;
    let fine = count_sign_domains(&phi, 2 * resolution)?;
    if fine.domains != report.domains {
        return Err(Error::Unresolved {
            counts: vec![report.domains, fine.domains],
        });
    }
    Ok(report)
}
