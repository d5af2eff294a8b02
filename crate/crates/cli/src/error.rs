use rheokit_core::RheoError;

/// Failure of a CLI command, carrying its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unreadable or invalid documents, unwritable output.
    #[error("{0}")]
    Input(String),
    /// A solver or the integrator failed.
    #[error("{0}")]
    Solver(String),
    /// The rigorous three-element equivalence did not hold.
    #[error("{0}")]
    Equivalence(String),
}

impl CliError {
    pub const EXIT_INPUT: i32 = 2;
    pub const EXIT_SOLVER: i32 = 3;
    pub const EXIT_EQUIVALENCE: i32 = 4;

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => Self::EXIT_INPUT,
            CliError::Solver(_) => Self::EXIT_SOLVER,
            CliError::Equivalence(_) => Self::EXIT_EQUIVALENCE,
        }
    }
}

impl From<RheoError> for CliError {
    fn from(e: RheoError) -> Self {
        match e {
            RheoError::NoConvergence(_) | RheoError::Integrator(_) => CliError::Solver(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(format!("csv output: {e}"))
    }
}
