use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use robin_cli::config::{parse_pair, parse_theta};
use robin_cli::{commands, CliError, Command, ConfigLayer, RunConfig};
use robin_core::PairIndex;

#[derive(Parser, Debug)]
#[command(
    name = "robin-square",
    version,
    about = "Robin Laplacian spectrum and nodal domains on the square"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Robin parameter (negative)
    #[arg(long, global = true, allow_negative_numbers = true)]
    h: Option<f64>,
    /// Lower end of the h range for crossings
    #[arg(long, global = true, allow_negative_numbers = true)]
    h_min: Option<f64>,
    /// Upper end of the h range for crossings
    #[arg(long, global = true, allow_negative_numbers = true)]
    h_max: Option<f64>,
    /// Index pair p,q (repeatable)
    #[arg(long = "pair", global = true, value_parser = parse_pair)]
    pairs: Vec<PairIndex>,
    /// Number of eigenvalues
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Mixing angle in radians, or pi/4, pi/2, 3pi/4
    #[arg(long, global = true, allow_negative_numbers = true, value_parser = parse_theta)]
    theta: Option<f64>,
    /// Number of θ samples on [0, π)
    #[arg(long, global = true)]
    theta_samples: Option<usize>,
    /// Nodal grid resolution (power of two, at least 256)
    #[arg(long, global = true)]
    resolution: Option<usize>,
    /// CSV output file (default stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// SVG output file
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Root-finding tolerance
    #[arg(long, global = true)]
    tol_root: Option<f64>,
    /// Seed for randomised property sampling
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// key=value configuration file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// First k eigenvalues with their index pairs
    Spectrum,
    /// Crossings of the eigencurves of the given pairs
    Crossings,
    /// Nodal domains of one eigenfunction
    Nodal,
    /// Nodal domain counts over a θ sweep
    SweepTheta,
    /// Courant-sharp verdicts for the first k labels
    Verdict,
    /// Run the acceptance suite
    Accept,
}

impl Cli {
    fn flags(&self) -> ConfigLayer {
        ConfigLayer {
            h: self.h,
            h_min: self.h_min,
            h_max: self.h_max,
            pairs: (!self.pairs.is_empty()).then(|| self.pairs.clone()),
            k: self.k,
            theta: self.theta,
            theta_samples: self.theta_samples,
            resolution: self.resolution,
            out: self.out.clone(),
            svg: self.svg.clone(),
            tol_root: self.tol_root,
            seed: self.seed,
        }
    }
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Spectrum => Command::Spectrum,
        Cmd::Crossings => Command::Crossings,
        Cmd::Nodal => Command::Nodal,
        Cmd::SweepTheta => Command::SweepTheta,
        Cmd::Verdict => Command::Verdict,
        Cmd::Accept => Command::Accept,
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("ROBIN_SQUARE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("ROBIN_SQUARE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let file = cli.config.as_deref().map(ConfigLayer::load).transpose()?;
    let cfg = RunConfig::resolve(command(cli.command), file, cli.flags())?;
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    commands::run(&cfg, &mut lock)?;
    lock.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("robin-square: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
