use thiserror::Error;

/// Failures of a command-line run, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("i/o error: {0}")]
    Io(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] robin_core::Error),

    #[error("{0} acceptance criteria failed")]
    AcceptanceFailed(usize),
}

impl CliError {
    /// 1 i/o, 2 configuration or invalid parameter, 3 spectral cutoff or
    /// scan resolution, 4 unresolved nodal count, 5 other numerical failure,
    /// 6 acceptance failure.
    pub fn exit_code(&self) -> i32 {
        use robin_core::Error as E;
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Core(E::InvalidParameter(_) | E::Regime(_)) => 2,
            CliError::Core(E::CutoffTooSmall { .. } | E::ScanTooCoarse { .. }) => 3,
            CliError::Core(E::Unresolved { .. }) => 4,
            CliError::Core(_) => 5,
            CliError::AcceptanceFailed(_) => 6,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
