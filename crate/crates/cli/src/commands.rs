//! The subcommands. Each writes CSV to the configured output (stdout by
//! default) and, where supported, an SVG plot.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::Path;

use robin_core::interval::Tolerances;
use robin_core::nodal::{find_critical_zeros, nodal_polylines};
use robin_core::square::enumerate_spectrum_with;
use robin_core::{
    count_nodal_domains_checked, courant_sharp_verdict, find_crossings, pair_value, sweep_theta, Eigenfunction,
    EigenfunctionSpec, PairIndex, RobinParam, SpectrumEntry,
};

use crate::acceptance;
use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::output::{csv_writer, fmt_num};
use crate::svg::{eigencurve_svg, nodal_svg};

/// Points per eigencurve in the crossings plot.
const CURVE_POINTS: usize = 400;

pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cfg.command {
        Command::Spectrum => spectrum(cfg, stdout),
        Command::Crossings => crossings(cfg, stdout),
        Command::Nodal => nodal(cfg, stdout),
        Command::SweepTheta => sweep(cfg, stdout),
        Command::Verdict => verdict(cfg, stdout),
        Command::Accept => accept(cfg, stdout),
    }
}

fn robin(h: f64) -> Result<RobinParam, CliError> {
    Ok(RobinParam::new(h)?)
}

fn tolerances(cfg: &RunConfig) -> Tolerances {
    Tolerances { root: cfg.tol_root }
}

fn single_pair(cfg: &RunConfig) -> Result<PairIndex, CliError> {
    match cfg.pairs.as_slice() {
        [p] => Ok(*p),
        [] => Err(CliError::Config("this command needs --pair p,q".into())),
        _ => Err(CliError::Config("this command takes exactly one --pair".into())),
    }
}

fn write_svg(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn pairs_field(pairs: &[PairIndex]) -> String {
    pairs.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn spectrum(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let entries = enumerate_spectrum_with(robin(cfg.h)?, cfg.k, tolerances(cfg))?;
    let mut w = csv_writer(cfg.out.as_deref(), stdout)?;
    w.write_record(["k", "value", "pairs", "multiplicity", "negative"])?;
    for e in &entries {
        for label in e.labels().filter(|&l| l <= cfg.k) {
            w.write_record([
                label.to_string(),
                fmt_num(e.value),
                pairs_field(&e.pairs),
                e.multiplicity.to_string(),
                e.is_negative().to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn crossings(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    if cfg.pairs.len() < 2 {
        return Err(CliError::Config("crossings needs at least two --pair values".into()));
    }
    let mut records = Vec::new();
    for (i, &a) in cfg.pairs.iter().enumerate() {
        for &b in &cfg.pairs[i + 1..] {
            records.extend(find_crossings(a, b, cfg.h_min, cfg.h_max)?);
        }
    }
    let mut w = csv_writer(cfg.out.as_deref(), stdout)?;
    w.write_record(["pair_a", "pair_b", "h_cross", "sigma_prime_sign", "case"])?;
    for r in &records {
        w.write_record([
            r.pair_a.to_string(),
            r.pair_b.to_string(),
            fmt_num(r.h_cross),
            r.sigma_prime_sign.to_string(),
            r.table_case.map_or("-", |c| c.as_str()).to_string(),
        ])?;
    }
    w.flush()?;

    if let Some(path) = &cfg.svg {
        let mut curves = Vec::new();
        for &pair in &cfg.pairs {
            let mut pts = Vec::with_capacity(CURVE_POINTS + 1);
            for i in 0..=CURVE_POINTS {
                let h = cfg.h_min + (cfg.h_max - cfg.h_min) * i as f64 / CURVE_POINTS as f64;
                pts.push((h, pair_value(pair, robin(h)?)?));
            }
            curves.push((pair.to_string(), pts));
        }
        let marks = records
            .iter()
            .map(|r| Ok((r.h_cross, pair_value(r.pair_a, robin(r.h_cross)?)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        write_svg(path, &eigencurve_svg(&curves, &marks))?;
    }
    Ok(())
}

fn nodal(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let pair = single_pair(cfg)?;
    let spec = EigenfunctionSpec::new(pair, robin(cfg.h)?, cfg.theta);
    let report = count_nodal_domains_checked(spec, cfg.resolution)?;
    let mut w = csv_writer(cfg.out.as_deref(), stdout)?;
    w.write_record(["theta", "domains", "boundary_zeros", "critical_zeros", "euler_bound"])?;
    w.write_record([
        fmt_num(report.spec.theta),
        report.domains.to_string(),
        report.boundary_zeros.to_string(),
        report.interior_critical_zeros.to_string(),
        report.euler_upper_bound.to_string(),
    ])?;
    w.flush()?;

    if let Some(path) = &cfg.svg {
        let phi = Eigenfunction::new(spec)?;
        let lines = nodal_polylines(&phi, cfg.resolution);
        let zeros: Vec<(f64, f64)> = find_critical_zeros(&phi).iter().map(|z| (z.x, z.y)).collect();
        let title = format!("{pair} h={} theta={}", fmt_num(cfg.h), fmt_num(report.spec.theta));
        write_svg(path, &nodal_svg(&title, &lines, &zeros))?;
    }
    Ok(())
}

fn sweep(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let pair = single_pair(cfg)?;
    let n = cfg.theta_samples;
    let thetas: Vec<f64> = (0..n).map(|i| PI * i as f64 / n as f64).collect();
    let samples = sweep_theta(pair, robin(cfg.h)?, &thetas, cfg.resolution)?;
    let mut w = csv_writer(cfg.out.as_deref(), stdout)?;
    w.write_record(["theta", "domains"])?;
    for s in &samples {
        w.write_record([fmt_num(s.theta), s.domains.map_or_else(String::new, |d| d.to_string())])?;
    }
    w.flush()?;
    Ok(())
}

fn verdict(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let h = robin(cfg.h)?;
    let entries: Vec<SpectrumEntry> = enumerate_spectrum_with(h, cfg.k, tolerances(cfg))?;
    let mut w = csv_writer(cfg.out.as_deref(), stdout)?;
    w.write_record(["k", "value", "verdict", "evidence"])?;
    for e in entries.iter().filter(|e| e.label <= cfg.k) {
        for v in courant_sharp_verdict(e, h, cfg.theta_samples, cfg.resolution)? {
            if v.label <= cfg.k {
                w.write_record([
                    v.label.to_string(),
                    fmt_num(v.value),
                    v.verdict.as_str().to_string(),
                    v.evidence,
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn accept(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut failed = 0;
    for id in acceptance::CRITERIA {
        let r = acceptance::run_criterion(id, cfg.seed);
        writeln!(stdout, "{r}")?;
        stdout.flush()?;
        if !r.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::AcceptanceFailed(failed));
    }
    Ok(())
}
