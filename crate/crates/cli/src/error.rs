use change_actions::Error as CoreError;
use thiserror::Error;

/// Failures that stop a command before it can produce a verdict.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Resource(String),

    /// The inputs are well formed but a law the command relies on fails.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Check(_) => "check",
            CliError::Input(_) => "input",
            CliError::Resource(_) => "resource",
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SpaceTooLarge { .. } | CoreError::SearchSpaceTooLarge(_) => CliError::Resource(e.to_string()),
            CoreError::NotClosedUnderDelta(_)
            | CoreError::NotADerivative { .. }
            | CoreError::NotRegular { .. }
            | CoreError::MonoidLawViolation { .. }
            | CoreError::ActionLawViolation { .. } => CliError::Check(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
