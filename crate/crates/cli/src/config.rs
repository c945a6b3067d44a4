//! Run configuration: defaults, overridden by a key=value file, overridden by
//! command-line flags.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fs;
use std::path::{Path, PathBuf};

use robin_core::PairIndex;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Crossings,
    Nodal,
    SweepTheta,
    Verdict,
    Accept,
}

/// Every setting that may come from a file or a flag. `None` means unset.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub h: Option<f64>,
    pub h_min: Option<f64>,
    pub h_max: Option<f64>,
    pub pairs: Option<Vec<PairIndex>>,
    pub k: Option<usize>,
    pub theta: Option<f64>,
    pub theta_samples: Option<usize>,
    pub resolution: Option<usize>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub tol_root: Option<f64>,
    pub seed: Option<u64>,
}

impl ConfigLayer {
    /// Values set in `over` replace those in `self`.
    pub fn overlay(self, over: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            h: over.h.or(self.h),
            h_min: over.h_min.or(self.h_min),
            h_max: over.h_max.or(self.h_max),
            pairs: over.pairs.or(self.pairs),
            k: over.k.or(self.k),
            theta: over.theta.or(self.theta),
            theta_samples: over.theta_samples.or(self.theta_samples),
            resolution: over.resolution.or(self.resolution),
            out: over.out.or(self.out),
            svg: over.svg.or(self.svg),
            tol_root: over.tol_root.or(self.tol_root),
            seed: over.seed.or(self.seed),
        }
    }

    /// Parses a flat key=value file. Blank lines and lines starting with `#`
    /// are ignored; keys use the flag names with or without dashes.
    pub fn parse_file(text: &str) -> Result<ConfigLayer, CliError> {
        let mut layer = ConfigLayer::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", n + 1)))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let bad = |e: String| CliError::Config(format!("line {}: {key}: {e}", n + 1));
            match key.as_str() {
                "h" => layer.h = Some(parse_f64(value).map_err(bad)?),
                "h_min" => layer.h_min = Some(parse_f64(value).map_err(bad)?),
                "h_max" => layer.h_max = Some(parse_f64(value).map_err(bad)?),
                "pair" | "pairs" => {
                    let pairs = value
                        .split(';')
                        .map(|p| parse_pair(p.trim()))
                        .collect::<Result<Vec<_>, _>>();
                    layer.pairs = Some(pairs.map_err(bad)?);
                }
                "k" => layer.k = Some(parse_usize(value).map_err(bad)?),
                "theta" => layer.theta = Some(parse_theta(value).map_err(bad)?),
                "theta_samples" => layer.theta_samples = Some(parse_usize(value).map_err(bad)?),
                "resolution" => layer.resolution = Some(parse_usize(value).map_err(bad)?),
                "out" => layer.out = Some(PathBuf::from(value)),
                "svg" => layer.svg = Some(PathBuf::from(value)),
                "tol_root" => layer.tol_root = Some(parse_f64(value).map_err(bad)?),
                "seed" => layer.seed = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                _ => return Err(CliError::Config(format!("line {}: unknown key {key}", n + 1))),
            }
        }
        Ok(layer)
    }

    pub fn load(path: &Path) -> Result<ConfigLayer, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        ConfigLayer::parse_file(&text)
    }
}

/// A validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub h: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub pairs: Vec<PairIndex>,
    pub k: usize,
    pub theta: f64,
    pub theta_samples: usize,
    pub resolution: usize,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub tol_root: f64,
    pub seed: u64,
}

impl RunConfig {
    pub fn defaults(command: Command) -> ConfigLayer {
        let _ = command;
        ConfigLayer {
            h: Some(-1.0),
            h_min: Some(-50.0),
            h_max: Some(-0.01),
            pairs: Some(vec![]),
            k: Some(19),
            theta: Some(FRAC_PI_4),
            theta_samples: Some(720),
            resolution: Some(1024),
            out: None,
            svg: None,
            tol_root: Some(1e-12),
            seed: Some(42),
        }
    }

    /// Resolves defaults < file < flags and validates the result.
    pub fn resolve(command: Command, file: Option<ConfigLayer>, flags: ConfigLayer) -> Result<RunConfig, CliError> {
        let merged = RunConfig::defaults(command)
            .overlay(file.unwrap_or_default())
            .overlay(flags);
        let cfg = RunConfig {
            command,
            h: merged.h.unwrap_or(-1.0),
            h_min: merged.h_min.unwrap_or(-50.0),
            h_max: merged.h_max.unwrap_or(-0.01),
            pairs: merged.pairs.unwrap_or_default(),
            k: merged.k.unwrap_or(19),
            theta: merged.theta.unwrap_or(FRAC_PI_4),
            theta_samples: merged.theta_samples.unwrap_or(720),
            resolution: merged.resolution.unwrap_or(1024),
            out: merged.out,
            svg: merged.svg,
            tol_root: merged.tol_root.unwrap_or(1e-12),
            seed: merged.seed.unwrap_or(42),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let err = |m: String| Err(CliError::Config(m));
        if !(self.h < 0.0 && self.h.is_finite()) {
            return err(format!("h must be negative, got {}", self.h));
        }
        if !(self.h_min < self.h_max && self.h_max < 0.0 && self.h_min.is_finite()) {
            return err(format!("need h-min < h-max < 0, got [{}, {}]", self.h_min, self.h_max));
        }
        if !(self.tol_root > 0.0 && self.tol_root.is_finite()) {
            return err(format!("tol-root must be positive, got {}", self.tol_root));
        }
        if self.resolution < 256 || !self.resolution.is_power_of_two() {
            return err(format!(
                "resolution must be a power of two >= 256, got {}",
                self.resolution
            ));
        }
        if self.k == 0 {
            return err("k must be at least 1".into());
        }
        if self.theta_samples == 0 {
            return err("theta-samples must be at least 1".into());
        }
        if !self.theta.is_finite() {
            return err("theta must be finite".into());
        }
        Ok(())
    }
}

pub fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"))
}

/// Radians, or one of the exact tokens `pi/4`, `pi/2`, `3pi/4`.
pub fn parse_theta(s: &str) -> Result<f64, String> {
    match s.trim() {
        "pi/4" => Ok(FRAC_PI_4),
        "pi/2" => Ok(FRAC_PI_2),
        "3pi/4" => Ok(3.0 * FRAC_PI_4),
        other => parse_f64(other),
    }
}

/// `p,q` with non-negative integers.
pub fn parse_pair(s: &str) -> Result<PairIndex, String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("{s:?}: expected p,q"))?;
    let p = parse_usize(p)?;
    let q = parse_usize(q)?;
    Ok(PairIndex::new(p, q))
}
