//! Spectrum of the square built from products of interval modes.
//!
//! Slot convention: slot 0 is β₀ (read as α₀ = iβ₀), slot 1 is α₁ when
//! −2/π < h < 0 and iβ₁ when h < −2/π, slot m ≥ 2 is α_m. The pair (p, q)
//! has eigenvalue π⁻²(s_p + s_q) where s_k is the signed square of slot k.

mod bounds;
mod crossings;

pub use bounds::{counting_bound_check, f_bound, CountingReport, BESSEL_J0_FIRST_ZERO};
pub use crossings::{find_crossings, predicted_sign, CrossingRecord, TableCase};

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{beta_gap_squared, slot_mode_with, Regime, RobinParam, SlotMode, Tolerances, CRITICAL_H};
use crate::roots::bisect;

/// Relative tolerance under which two eigenvalues are reported as one.
pub const TAU_DEG: f64 = 1e-9;
/// Largest slot index the enumerator will consider before giving up.
pub const MAX_POOL: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairIndex {
    pub p: usize,
    pub q: usize,
}

impl PairIndex {
    /// Canonical form with p ≤ q.
    pub fn new(p: usize, q: usize) -> Self {
        PairIndex {
            p: p.min(q),
            q: p.max(q),
        }
    }

    pub fn multiplicity(self) -> usize {
        if self.p == self.q {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Solved slots 0..=n at one h, shared by everything that needs many pairs.
#[derive(Debug, Clone)]
pub struct SlotTable {
    pub h: RobinParam,
    pub slots: Vec<SlotMode>,
}

impl SlotTable {
    pub fn new(h: RobinParam, max_slot: usize) -> Result<Self> {
        Self::with_tolerances(h, max_slot, Tolerances::default())
    }

    pub fn with_tolerances(h: RobinParam, max_slot: usize, tol: Tolerances) -> Result<Self> {
        let slots = (0..=max_slot)
            .map(|k| slot_mode_with(k, h, tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(SlotTable { h, slots })
    }

    pub fn max_slot(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn value(&self, pair: PairIndex) -> f64 {
        (self.slots[pair.p].signed_square + self.slots[pair.q].signed_square) / (PI * PI)
    }
}

pub fn pair_value(pair: PairIndex, h: RobinParam) -> Result<f64> {
    pair_value_with(pair, h, Tolerances::default())
}

pub fn pair_value_with(pair: PairIndex, h: RobinParam, tol: Tolerances) -> Result<f64> {
    let sp = slot_mode_with(pair.p, h, tol)?.signed_square;
    let sq = slot_mode_with(pair.q, h, tol)?.signed_square;
    Ok((sp + sq) / (PI * PI))
}

/// Pairs whose values differ only through β₀² − β₁² when deep: same number of
/// hyperbolic slots and the same trigonometric slots.
fn hyperbolic_structure(pair: PairIndex) -> (usize, usize, Vec<usize>) {
    let mut n0 = 0;
    let mut n1 = 0;
    let mut trig = Vec::new();
    for s in [pair.p, pair.q] {
        match s {
            0 => n0 += 1,
            1 => n1 += 1,
            _ => trig.push(s),
        }
    }
    (n0, n1, trig)
}

/// If `a` and `b` differ only by trading β₀ for β₁, returns the difference
/// in the number of β₀ slots.
fn hyperbolic_trade(a: PairIndex, b: PairIndex) -> Option<isize> {
    let (a0, a1, at) = hyperbolic_structure(a);
    let (b0, b1, bt) = hyperbolic_structure(b);
    if a0 + a1 != b0 + b1 || at != bt {
        return None;
    }
    Some(a0 as isize - b0 as isize)
}

/// In the deep regime, λ_a − λ_b for pairs related by [`hyperbolic_trade`],
/// computed from the accurate gap β₀² − β₁².
fn structural_difference(a: PairIndex, b: PairIndex, gap: Option<f64>) -> Option<f64> {
    let gap = gap?;
    let d = hyperbolic_trade(a, b)?;
    Some(-(d as f64) * gap / (PI * PI))
}

fn deep_gap(h: RobinParam) -> Result<Option<f64>> {
    match h.regime() {
        Regime::Deep => Ok(Some(beta_gap_squared(h)?)),
        _ => Ok(None),
    }
}

pub fn sigma(a: PairIndex, b: PairIndex, h: RobinParam) -> Result<f64> {
    sigma_with(a, b, h, Tolerances::default())
}

pub fn sigma_with(a: PairIndex, b: PairIndex, h: RobinParam, tol: Tolerances) -> Result<f64> {
    if h.regime() == Regime::Deep && hyperbolic_trade(a, b).is_some() {
        if let Some(d) = structural_difference(a, b, deep_gap(h)?) {
            return Ok(d);
        }
    }
    Ok(pair_value_with(a, h, tol)? - pair_value_with(b, h, tol)?)
}

/// π²·σ, i.e. the difference of the signed squares without the π⁻² factor.
pub fn sigma_scaled(a: PairIndex, b: PairIndex, h: RobinParam) -> Result<f64> {
    Ok(PI * PI * sigma(a, b, h)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    /// Minimal label: one plus the number of eigenvalues (with multiplicity) strictly below.
    pub label: usize,
    pub value: f64,
    pub pairs: Vec<PairIndex>,
    pub multiplicity: usize,
}

impl SpectrumEntry {
    pub fn is_negative(&self) -> bool {
        self.value < 0.0
    }

    /// Labels occupied by this entry.
    pub fn labels(&self) -> std::ops::Range<usize> {
        self.label..self.label + self.multiplicity
    }
}

struct Candidate {
    pair: PairIndex,
    value: f64,
}

fn tie_order(a: &Candidate, b: &Candidate, gap: Option<f64>) -> Ordering {
    if let Some(d) = structural_difference(a.pair, b.pair, gap) {
        return d.partial_cmp(&0.0).unwrap_or(Ordering::Equal).then(a.pair.cmp(&b.pair));
    }
    a.value.total_cmp(&b.value).then(a.pair.cmp(&b.pair))
}

fn mergeable(a: &Candidate, b: &Candidate, gap: Option<f64>) -> bool {
    if structural_difference(a.pair, b.pair, gap).is_some() {
        return false;
    }
    (a.value - b.value).abs() < TAU_DEG * a.value.abs().max(1.0)
}

/// Sorts and groups the candidate pairs. Values closer than τ_deg are merged,
/// except pairs that differ only by swapping β₀ for β₁, which are kept apart
/// and ordered by the exact sign of their gap.
fn group_candidates(mut cands: Vec<Candidate>, gap: Option<f64>) -> Vec<SpectrumEntry> {
    cands.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.pair.cmp(&b.pair)));

    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut start = 0;
    while start < cands.len() {
        // chain of values within tolerance of their neighbour
        let mut end = start + 1;
        while end < cands.len()
            && (cands[end].value - cands[end - 1].value).abs() < TAU_DEG * cands[end - 1].value.abs().max(1.0)
        {
            end += 1;
        }
        let cluster = &mut cands[start..end];
        // insertion sort: the comparator mixes exact gaps with float values
        for i in 1..cluster.len() {
            let mut j = i;
            while j > 0 && tie_order(&cluster[j - 1], &cluster[j], gap) == Ordering::Greater {
                cluster.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut group: Vec<usize> = vec![0];
        let flush = |group: &[usize], entries: &mut Vec<SpectrumEntry>| {
            let pairs: Vec<PairIndex> = group.iter().map(|&i| cluster[i].pair).collect();
            let multiplicity = pairs.iter().map(|p| p.multiplicity()).sum();
            let value = cluster[group[0]].value;
            entries.push(SpectrumEntry {
                label: 0,
                value,
                pairs,
                multiplicity,
            });
        };
        for i in 1..cluster.len() {
            if group.iter().all(|&g| mergeable(&cluster[g], &cluster[i], gap)) {
                group.push(i);
            } else {
                flush(&group, &mut entries);
                group = vec![i];
            }
        }
        flush(&group, &mut entries);
        start = end;
    }

    let mut label = 1;
    for e in &mut entries {
        e.pairs.sort();
        e.label = label;
        label += e.multiplicity;
    }
    entries
}

/// The entries covering labels 1..=k (the last entry may extend past k).
pub fn enumerate_spectrum(h: RobinParam, k: usize) -> Result<Vec<SpectrumEntry>> {
    enumerate_spectrum_with(h, k, Tolerances::default())
}

pub fn enumerate_spectrum_with(h: RobinParam, k: usize, tol: Tolerances) -> Result<Vec<SpectrumEntry>> {
    if k == 0 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    let gap = deep_gap(h)?;
    let mut pool = k + 4;
    loop {
        let table = SlotTable::with_tolerances(h, pool, tol)?;
        let mut cands = Vec::with_capacity((pool + 1) * (pool + 2) / 2);
        for p in 0..=pool {
            for q in p..=pool {
                let pair = PairIndex::new(p, q);
                cands.push(Candidate {
                    pair,
                    value: table.value(pair),
                });
            }
        }
        let mut entries = group_candidates(cands, gap);
        if let Some(idx) = entries.iter().position(|e| e.labels().end > k) {
            // any pair with a slot beyond the pool is at least s₀ + (pool·π)²
            let excluded_floor = (table.slots[0].signed_square + (pool as f64 * PI).powi(2)) / (PI * PI);
            let kth = entries[idx].value;
            if kth + TAU_DEG * kth.abs().max(1.0) < excluded_floor {
                entries.truncate(idx + 1);
                return Ok(entries);
            }
        }
        if pool >= MAX_POOL {
            return Err(Error::CutoffTooSmall { requested: k, pool });
        }
        pool = (2 * pool).min(MAX_POOL);
    }
}

/// a_k(h) = hπ + s_k/2 + h²π²/2 with s_k the signed square of slot k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AkValue {
    pub slot: usize,
    pub h: f64,
    pub value: f64,
}

pub fn a_value(slot: usize, h: RobinParam) -> Result<AkValue> {
    let s = slot_mode_with(slot, h, Tolerances::default())?.signed_square;
    let hp = h.h() * PI;
    Ok(AkValue {
        slot,
        h: h.h(),
        value: hp + 0.5 * s + 0.5 * hp * hp,
    })
}

fn rp(h: f64) -> RobinParam {
    RobinParam::new(h).expect("threshold brackets stay negative")
}

/// Width to which the thresholds below are bisected.
pub const THRESHOLD_WIDTH: f64 = 1e-10;

/// The h in (−2/π, 0) where the (0,1) eigenvalue changes sign (β₀ = α₁).
pub fn find_h2_star() -> f64 {
    let f = |h: f64| pair_value(PairIndex::new(0, 1), rp(h)).unwrap_or(f64::NAN);
    bisect(f, CRITICAL_H + 1e-9, -1e-9, THRESHOLD_WIDTH).expect("sign change is structural")
}

/// The crossing of the (2,2) and (0,3) eigencurves.
pub fn find_h9_star() -> f64 {
    let f = |h: f64| sigma(PairIndex::new(2, 2), PairIndex::new(0, 3), rp(h)).unwrap_or(f64::NAN);
    bisect(f, -10.0, CRITICAL_H - 1e-8, THRESHOLD_WIDTH).expect("sign change is structural")
}

/// The h where β₀(h) = α_q(h); below it the (0,q) eigenvalue is negative.
pub fn tilde_h(q: usize) -> Result<f64> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("tilde_h needs q >= 2, got {q}")));
    }
    let f = |h: f64| pair_value(PairIndex::new(0, q), rp(h)).unwrap_or(f64::NAN);
    bisect(f, -(q as f64 + 1.0), -1e-9, THRESHOLD_WIDTH)
}

/// The smallest label a negative eigenvalue of the pair must carry when h < −2/π.
pub fn expected_negative_label(pair: PairIndex) -> Option<usize> {
    match (pair.p, pair.q) {
        (0, 0) => Some(1),
        (0, 1) => Some(2),
        (1, 1) => Some(4),
        (0, q) => Some(4 * q - 3),
        (1, q) => Some(4 * q - 1),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelCheck {
    pub pair: PairIndex,
    pub value: f64,
    pub label: usize,
    pub expected: Option<usize>,
    pub pass: bool,
}

/// Checks the labels of every negative eigenvalue against the pattern
/// (0,0), (0,1), (1,1), (0,2), (1,2), ... i.e. (0,q) ↦ 4q−3 and (1,q) ↦ 4q−1.
pub fn minimal_labelling_check(h: RobinParam) -> Result<Vec<LabelCheck>> {
    if h.regime() != Regime::Deep {
        return Err(Error::Regime(format!(
            "labelling pattern holds for h < -2/pi, got {}",
            h.h()
        )));
    }
    // the number of negative eigenvalues is below 4(q_max + 1) with q_max ≈ −h
    let k = 4 * ((-h.h()).ceil() as usize + 2);
    let entries = enumerate_spectrum(h, k)?;
    let mut out = Vec::new();
    for e in entries.iter().filter(|e| e.is_negative()) {
        for &pair in &e.pairs {
            let expected = expected_negative_label(pair);
            let pass = e.pairs.len() == 1 && expected == Some(e.label);
            out.push(LabelCheck {
                pair,
                value: e.value,
                label: e.label,
                expected,
                pass,
            });
        }
    }
    Ok(out)
}

/// Number of negative eigenvalues counted with multiplicity.
pub fn negative_count(h: RobinParam) -> Result<usize> {
    let k = 4 * ((-h.h()).ceil() as usize + 2);
    let entries = enumerate_spectrum(h, k)?;
    Ok(entries.iter().filter(|e| e.is_negative()).map(|e| e.multiplicity).sum())
}
