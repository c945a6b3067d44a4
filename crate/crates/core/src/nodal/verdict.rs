//! Courant-sharpness verdicts for spectrum entries.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rayon::prelude::*;

use super::{
    critical::critical_thetas,
    domains::{count_nodal_domains, count_sign_domains},
    reduce_theta, Eigenfunction, EigenfunctionSpec,
};
use crate::error::Result;
use crate::interval::RobinParam;
use crate::square::{PairIndex, SpectrumEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sharp,
    NotSharp,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Sharp => "Sharp",
            Verdict::NotSharp => "NotSharp",
            Verdict::Undecided => "Undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelVerdict {
    pub label: usize,
    pub value: f64,
    pub verdict: Verdict,
    pub evidence: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSample {
    pub theta: f64,
    /// None when the count did not stabilise under refinement.
    pub domains: Option<usize>,
}

/// Domain counts of Φ_θ for the pair at each θ, in the given order.
pub fn sweep_theta(pair: PairIndex, h: RobinParam, thetas: &[f64], resolution: usize) -> Result<Vec<ThetaSample>> {
    thetas
        .par_iter()
        .map(|&theta| {
            let phi = Eigenfunction::new(EigenfunctionSpec::new(pair, h, theta))?;
            let domains = count_sign_domains(&phi, resolution).ok().map(|c| c.domains);
            Ok(ThetaSample { theta, domains })
        })
        .collect()
}

/// Parity obstructions: an odd Φ has an even number of domains, and when both
/// indices are odd the count is a multiple of four.
fn parity_rule(pair: PairIndex, k: usize) -> Option<String> {
    if (pair.p + pair.q) % 2 == 1 && k % 2 == 1 {
        return Some(format!(
            "parity: {pair} has an even number of domains, label {k} is odd"
        ));
    }
    if pair.p % 2 == 1 && pair.q % 2 == 1 && !k.is_multiple_of(4) {
        return Some(format!("parity: {pair} has a multiple of 4 domains, label {k} is not"));
    }
    None
}

/// θ values to test, most informative first.
fn theta_schedule(pair: PairIndex, h: RobinParam, samples: usize) -> Vec<f64> {
    let mut thetas = vec![FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, 0.0];
    if pair.p == 0 && pair.q >= 4 && pair.q.is_multiple_of(2) {
        if let Ok(set) = critical_thetas(pair.q, h) {
            thetas.extend(set.thetas());
        }
    }
    thetas.extend((0..samples).map(|i| PI * i as f64 / samples as f64));
    let mut seen: Vec<f64> = Vec::with_capacity(thetas.len());
    for t in thetas.into_iter().map(reduce_theta) {
        if !seen.iter().any(|&s| (s - t).abs() < 1e-15) {
            seen.push(t);
        }
    }
    seen
}

const CHUNK: usize = 32;

/// Verdict for every label occupied by `entry`.
///
/// Entries shared by several pairs or of multiplicity above two are
/// Undecided. Labels above the first of an entry equal an eigenvalue with a
/// smaller label and are NotSharp. Otherwise parity rules are applied, then
/// the θ sweep searches for an eigenfunction with exactly k domains.
pub fn courant_sharp_verdict(
    entry: &SpectrumEntry,
    h: RobinParam,
    theta_samples: usize,
    resolution: usize,
) -> Result<Vec<LabelVerdict>> {
    let mut out = Vec::new();
    for label in entry.labels() {
        let mk = |verdict, evidence: String| LabelVerdict {
            label,
            value: entry.value,
            verdict,
            evidence,
        };
        if entry.pairs.len() > 1 || entry.multiplicity > 2 {
            let pairs: Vec<String> = entry.pairs.iter().map(|p| p.to_string()).collect();
            out.push(mk(
                Verdict::Undecided,
                format!(
                    "eigenspace of dimension {} from {}",
                    entry.multiplicity,
                    pairs.join(" ")
                ),
            ));
            continue;
        }
        if label != entry.label {
            out.push(mk(
                Verdict::NotSharp,
                format!("degenerate: equals label {}", entry.label),
            ));
            continue;
        }
        let pair = entry.pairs[0];
        if let Some(reason) = parity_rule(pair, label) {
            out.push(mk(Verdict::NotSharp, reason));
            continue;
        }
        let thetas = if pair.p == pair.q {
            vec![FRAC_PI_4]
        } else {
            theta_schedule(pair, h, theta_samples)
        };
        let mut max_seen = 0;
        let mut unresolved = 0;
        let mut hit = None;
        for chunk in thetas.chunks(CHUNK) {
            let counts = sweep_theta(pair, h, chunk, resolution)?;
            for s in &counts {
                match s.domains {
                    Some(d) => {
                        max_seen = max_seen.max(d);
                        if d == label && hit.is_none() {
                            hit = Some(s.theta);
                        }
                    }
                    None => unresolved += 1,
                }
            }
            if hit.is_some() {
                break;
            }
        }
        if let Some(theta) = hit {
            out.push(mk(
                Verdict::Sharp,
                format!("{pair} at theta={theta:.6} has {label} domains"),
            ));
            continue;
        }
        if unresolved > 0 {
            out.push(mk(
                Verdict::Undecided,
                format!("{unresolved} theta samples did not stabilise; max {max_seen} domains"),
            ));
            continue;
        }
        let bound = euler_bound_at(pair, h, resolution);
        out.push(mk(
            Verdict::NotSharp,
            format!(
                "{pair}: max {max_seen} domains over {} theta values{bound}",
                thetas.len()
            ),
        ));
    }
    Ok(out)
}

fn euler_bound_at(pair: PairIndex, h: RobinParam, resolution: usize) -> String {
    match count_nodal_domains(EigenfunctionSpec::new(pair, h, 3.0 * FRAC_PI_4), resolution) {
        Ok(r) => format!("; Euler bound at 3pi/4 is {}", r.euler_upper_bound),
        Err(_) => String::new(),
    }
}
