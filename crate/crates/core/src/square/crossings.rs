//! Crossings of eigencurves h ↦ λ_{p,q}(h) and the sign of σ′ at them.

use rayon::prelude::*;

use super::{a_value, sigma, PairIndex};
use crate::error::{Error, Result};
use crate::interval::{Regime, RobinParam, CRITICAL_H};
use crate::roots::bisect;

/// Scan density in samples per decade of |h|.
pub const SAMPLES_PER_DECADE: f64 = 2000.0;
/// Half-width of the band excluded around h = −2/π.
pub const CRITICAL_GUARD: f64 = 1e-8;
/// Bisection width for crossing locations.
pub const CROSSING_WIDTH: f64 = 1e-10;
const REFINE_DEPTH: usize = 4;
const REFINE_SPLIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableCase {
    I,
    II,
    III,
    IV,
    V,
}

impl TableCase {
    pub fn as_str(self) -> &'static str {
        match self {
            TableCase::I => "i",
            TableCase::II => "ii",
            TableCase::III => "iii",
            TableCase::IV => "iv",
            TableCase::V => "v",
        }
    }

    /// Orients two pairs so that the one holding the smaller first slot comes
    /// first, then classifies them. Returns the oriented pairs as well.
    pub fn classify(a: PairIndex, b: PairIndex) -> (PairIndex, PairIndex, Option<TableCase>) {
        let (a, b) = if (b.p, b.q) < (a.p, a.q) { (b, a) } else { (a, b) };
        let case = match (a.p, a.q, b.p, b.q) {
            (0, q, 1, 1) if q >= 2 => Some(TableCase::I),
            (0, q, 1, q2) if q >= 3 && q2 >= 2 => Some(TableCase::II),
            (0, q, p2, _) if q >= 3 && p2 >= 2 => Some(TableCase::III),
            (1, q, p2, _) if q >= 3 && p2 >= 2 => Some(TableCase::IV),
            (p, q, p2, _) if p >= 2 && q >= 4 && p2 >= 3 => Some(TableCase::V),
            _ => None,
        };
        (a, b, case)
    }
}

/// Sign of σ′ at a zero of σ = λ_a − λ_b, with (a, b) oriented as in
/// [`TableCase::classify`].
pub fn predicted_sign(case: TableCase, a: PairIndex, b: PairIndex, h: RobinParam) -> Result<i8> {
    if h.regime() == Regime::Shallow {
        return Ok(-1);
    }
    Ok(match case {
        TableCase::I => -1,
        TableCase::II => {
            let a0 = a_value(0, h)?.value;
            let aq = a_value(a.q, h)?.value;
            let a1 = a_value(1, h)?.value;
            let aq2 = a_value(b.q, h)?.value;
            let s = (a0 + aq) * (a0 * aq - a1 * aq2);
            if s > 0.0 {
                1
            } else if s < 0.0 {
                -1
            } else {
                0
            }
        }
        _ => 1,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingRecord {
    pub pair_a: PairIndex,
    pub pair_b: PairIndex,
    pub h_cross: f64,
    pub sigma_prime: f64,
    pub sigma_prime_sign: i8,
    pub table_case: Option<TableCase>,
}

impl CrossingRecord {
    /// Whether the measured sign agrees with the case table; `None` if the
    /// pair is outside the table.
    pub fn matches_table(&self) -> Option<bool> {
        let case = self.table_case?;
        let h = RobinParam::new(self.h_cross).ok()?;
        predicted_sign(case, self.pair_a, self.pair_b, h)
            .ok()
            .map(|s| s == self.sigma_prime_sign)
    }
}

fn sig(a: PairIndex, b: PairIndex, h: f64) -> f64 {
    match RobinParam::new(h) {
        Ok(h) => sigma(a, b, h).unwrap_or(f64::NAN),
        Err(_) => f64::NAN,
    }
}

fn log_grid(lo: f64, hi: f64) -> Vec<f64> {
    // lo < hi < 0; uniform in log|h|
    let (u0, u1) = ((-lo).ln(), (-hi).ln());
    let decades = (u0 - u1) / std::f64::consts::LN_10;
    let n = ((SAMPLES_PER_DECADE * decades).ceil() as usize).max(SAMPLES_PER_DECADE as usize);
    (0..=n).map(|i| -(u0 + (u1 - u0) * i as f64 / n as f64).exp()).collect()
}

/// Sign-change cells of σ on `grid`, refining cells where a parabola through
/// three same-signed samples dips across zero.
fn sign_change_cells(a: PairIndex, b: PairIndex, grid: &[f64], depth: usize) -> Result<Vec<(f64, f64)>> {
    let vals: Vec<f64> = grid.par_iter().map(|&h| sig(a, b, h)).collect();
    let mut cells = Vec::new();
    for i in 0..grid.len() - 1 {
        if vals[i] == 0.0 {
            cells.push((grid[i], grid[i]));
        } else if vals[i].signum() != vals[i + 1].signum() && vals[i + 1] != 0.0 {
            cells.push((grid[i], grid[i + 1]));
        }
    }
    if let Some(&last) = vals.last() {
        if last == 0.0 {
            cells.push((grid[grid.len() - 1], grid[grid.len() - 1]));
        }
    }
    for i in 1..grid.len() - 1 {
        let (l, m, r) = (vals[i - 1], vals[i], vals[i + 1]);
        if l.signum() != m.signum() || r.signum() != m.signum() || m == 0.0 {
            continue;
        }
        if !(m.abs() < l.abs() && m.abs() < r.abs()) {
            continue;
        }
        // vertex value of the interpolating parabola
        let (x0, x1, x2) = (grid[i - 1], grid[i], grid[i + 1]);
        let d01 = (m - l) / (x1 - x0);
        let d12 = (r - m) / (x2 - x1);
        let c2 = (d12 - d01) / (x2 - x0);
        if c2 == 0.0 {
            continue;
        }
        let c1 = d01 - c2 * (x0 + x1);
        let xv = -c1 / (2.0 * c2);
        let c0 = l - c1 * x0 - c2 * x0 * x0;
        let vertex = c0 + c1 * xv + c2 * xv * xv;
        if vertex.signum() == m.signum() {
            continue;
        }
        if depth >= REFINE_DEPTH {
            return Err(Error::ScanTooCoarse { h: x1 });
        }
        let sub: Vec<f64> = (0..=REFINE_SPLIT)
            .map(|j| x0 + (x2 - x0) * j as f64 / REFINE_SPLIT as f64)
            .collect();
        cells.extend(sign_change_cells(a, b, &sub, depth + 1)?);
    }
    Ok(cells)
}

/// All crossings of the curves of `a` and `b` inside `[h_min, h_max]`, sorted by h.
pub fn find_crossings(a: PairIndex, b: PairIndex, h_min: f64, h_max: f64) -> Result<Vec<CrossingRecord>> {
    if !(h_min.is_finite() && h_max.is_finite() && h_min < h_max && h_max < 0.0) {
        return Err(Error::InvalidParameter(format!("bad h range [{h_min}, {h_max}]")));
    }
    if a == b {
        return Err(Error::InvalidParameter("crossing needs two distinct pairs".into()));
    }
    let (a, b, table_case) = TableCase::classify(a, b);

    let mut ranges = Vec::new();
    let (g_lo, g_hi) = (CRITICAL_H - CRITICAL_GUARD, CRITICAL_H + CRITICAL_GUARD);
    if h_max <= g_lo || h_min >= g_hi {
        ranges.push((h_min, h_max));
    } else {
        if h_min < g_lo {
            ranges.push((h_min, g_lo));
        }
        if h_max > g_hi {
            ranges.push((g_hi, h_max));
        }
    }

    let mut cells = Vec::new();
    for (lo, hi) in ranges {
        cells.extend(sign_change_cells(a, b, &log_grid(lo, hi), 0)?);
    }

    let mut records: Vec<CrossingRecord> = cells
        .par_iter()
        .map(|&(lo, hi)| {
            let h_cross = if lo == hi {
                lo
            } else {
                bisect(|h| sig(a, b, h), lo, hi, CROSSING_WIDTH)?
            };
            let step = 1e-6 * h_cross.abs().max(1.0);
            let hp = (h_cross + step).min(-f64::MIN_POSITIVE);
            let hm = h_cross - step;
            let sigma_prime = (sig(a, b, hp) - sig(a, b, hm)) / (hp - hm);
            let sigma_prime_sign = if sigma_prime > 0.0 {
                1
            } else if sigma_prime < 0.0 {
                -1
            } else {
                0
            };
            Ok(CrossingRecord {
                pair_a: a,
                pair_b: b,
                h_cross,
                sigma_prime,
                sigma_prime_sign,
                table_case,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|x, y| x.h_cross.total_cmp(&y.h_cross));
    records.dedup_by(|x, y| (x.h_cross - y.h_cross).abs() < 10.0 * CROSSING_WIDTH);
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: usize, q: usize) -> PairIndex {
        PairIndex::new(p, q)
    }

    #[test]
    fn classification() {
        assert_eq!(TableCase::classify(pr(1, 1), pr(0, 2)).2, Some(TableCase::I));
        assert_eq!(TableCase::classify(pr(0, 3), pr(1, 2)).2, Some(TableCase::II));
        assert_eq!(TableCase::classify(pr(2, 2), pr(0, 3)).2, Some(TableCase::III));
        assert_eq!(TableCase::classify(pr(1, 3), pr(2, 2)).2, Some(TableCase::IV));
        assert_eq!(TableCase::classify(pr(3, 3), pr(2, 4)).2, Some(TableCase::V));
        assert_eq!(TableCase::classify(pr(0, 2), pr(2, 2)).2, None);
        let (a, b, _) = TableCase::classify(pr(2, 2), pr(0, 3));
        assert_eq!((a, b), (pr(0, 3), pr(2, 2)));
    }

    #[test]
    fn grid_density() {
        let g = log_grid(-10.0, -1.0);
        assert_eq!(g.len(), 2001);
        assert!((g[0] + 10.0).abs() < 1e-12 && (g[2000] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(find_crossings(pr(0, 2), pr(1, 1), -1.0, 0.5).is_err());
        assert!(find_crossings(pr(0, 2), pr(0, 2), -2.0, -1.0).is_err());
    }

    #[test]
    fn h9_crossing_found_once() {
        let r = find_crossings(pr(2, 2), pr(0, 3), -4.0, -0.1).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].h_cross + 1.6293).abs() < 1e-3);
        assert_eq!(r[0].table_case, Some(TableCase::III));
        assert_eq!(r[0].matches_table(), Some(true));
    }
}
