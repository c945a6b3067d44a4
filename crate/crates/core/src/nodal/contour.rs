//! Zero-level polylines by marching squares on the sign grid.
//!
//! Vertices with Φ ≤ 0 are treated as negative. Every grid edge whose end
//! signs differ carries one crossing point, placed by linear interpolation.
//! Saddle cells are disambiguated by the mean of the four corner values.

use super::{
    domains::{sample, SignGrid},
    Eigenfunction,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    /// True when the curve closes on itself without reaching the boundary.
    pub closed: bool,
}

const NONE: u32 = u32::MAX;

fn h_edge(g: &SignGrid, i: usize, j: usize) -> usize {
    2 * g.idx(i, j)
}

fn v_edge(g: &SignGrid, i: usize, j: usize) -> usize {
    2 * g.idx(i, j) + 1
}

fn positive(g: &SignGrid, i: usize, j: usize) -> bool {
    g.vals[g.idx(i, j)] > 0.0
}

/// Endpoints of an edge id as grid vertices.
fn edge_ends(g: &SignGrid, e: usize) -> ((usize, usize), (usize, usize)) {
    let k = e / 2;
    let (i, j) = (k % (g.r + 1), k / (g.r + 1));
    if e.is_multiple_of(2) {
        ((i, j), (i + 1, j))
    } else {
        ((i, j), (i, j + 1))
    }
}

fn on_boundary(g: &SignGrid, e: usize) -> bool {
    let ((i, j), _) = edge_ends(g, e);
    if e.is_multiple_of(2) {
        j == 0 || j == g.r
    } else {
        i == 0 || i == g.r
    }
}

fn crossing_point(g: &SignGrid, e: usize) -> (f64, f64) {
    let ((i0, j0), (i1, j1)) = edge_ends(g, e);
    let v0 = g.vals[g.idx(i0, j0)];
    let v1 = g.vals[g.idx(i1, j1)];
    let t = if v0 == v1 {
        0.5
    } else {
        (v0 / (v0 - v1)).clamp(0.0, 1.0)
    };
    let x = g.xs[i0] + t * (g.xs[i1] - g.xs[i0]);
    let y = g.xs[j0] + t * (g.xs[j1] - g.xs[j0]);
    (x, y)
}

fn link(adj: &mut [[u32; 2]], a: usize, b: usize) {
    for (from, to) in [(a, b), (b, a)] {
        let slot = &mut adj[from];
        if slot[0] == NONE {
            slot[0] = to as u32;
        } else {
            slot[1] = to as u32;
        }
    }
}

/// Chains of crossed edge ids with a flag for closed chains.
fn trace(g: &SignGrid) -> Vec<(Vec<usize>, bool)> {
    let n = g.r + 1;
    let mut adj = vec![[NONE; 2]; 2 * n * n];
    for j in 0..g.r {
        for i in 0..g.r {
            let a = positive(g, i, j);
            let b = positive(g, i + 1, j);
            let c = positive(g, i + 1, j + 1);
            let d = positive(g, i, j + 1);
            let (bottom, top) = (h_edge(g, i, j), h_edge(g, i, j + 1));
            let (left, right) = (v_edge(g, i, j), v_edge(g, i + 1, j));
            let mut crossed = Vec::with_capacity(4);
            if a != b {
                crossed.push(bottom);
            }
            if b != c {
                crossed.push(right);
            }
            if c != d {
                crossed.push(top);
            }
            if d != a {
                crossed.push(left);
            }
            match crossed.len() {
                2 => link(&mut adj, crossed[0], crossed[1]),
                4 => {
                    let mean = (g.vals[g.idx(i, j)]
                        + g.vals[g.idx(i + 1, j)]
                        + g.vals[g.idx(i + 1, j + 1)]
                        + g.vals[g.idx(i, j + 1)])
                        / 4.0;
                    if (mean > 0.0) == a {
                        // a and c joined through the centre
                        link(&mut adj, bottom, right);
                        link(&mut adj, top, left);
                    } else {
                        link(&mut adj, bottom, left);
                        link(&mut adj, top, right);
                    }
                }
                _ => {}
            }
        }
    }

    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    let walk = |start: usize, seen: &mut Vec<bool>| {
        let mut chain = vec![start];
        seen[start] = true;
        let mut cur = start;
        loop {
            let next = adj[cur].iter().copied().find(|&e| e != NONE && !seen[e as usize]);
            match next {
                Some(e) => {
                    let e = e as usize;
                    seen[e] = true;
                    chain.push(e);
                    cur = e;
                }
                None => break,
            }
        }
        chain
    };
    // open curves start at a boundary crossing
    for e in 0..adj.len() {
        if !seen[e] && adj[e][0] != NONE && on_boundary(g, e) {
            out.push((walk(e, &mut seen), false));
        }
    }
    for e in 0..adj.len() {
        if !seen[e] && adj[e][0] != NONE {
            let chain = walk(e, &mut seen);
            let closed = chain.len() > 2 && !chain.iter().any(|&c| on_boundary(g, c));
            out.push((chain, closed));
        }
    }
    out
}

/// Zero-level polylines of Φ on an (R+1)² grid.
pub fn nodal_polylines(phi: &Eigenfunction, resolution: usize) -> Vec<Polyline> {
    let g = sample(phi, resolution);
    trace(&g)
        .into_iter()
        .map(|(chain, closed)| {
            let mut points: Vec<(f64, f64)> = chain.iter().map(|&e| crossing_point(&g, e)).collect();
            if closed {
                points.push(points[0]);
            }
            Polyline { points, closed }
        })
        .collect()
}

pub(crate) fn interior_loops_on(g: &SignGrid) -> usize {
    trace(g).iter().filter(|(_, closed)| *closed).count()
}

/// Number of nodal-set components that do not reach the boundary.
pub fn interior_loops(phi: &Eigenfunction, resolution: usize) -> usize {
    interior_loops_on(&sample(phi, resolution))
}
