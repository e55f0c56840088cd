//! Command implementations behind the `ldpcdo` binary.

pub mod commands;
pub mod config;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ldpcdo::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed: {}", .0.join(", "))]
    Verification(Vec<String>),
}

impl CliError {
    /// Process exit status: 2 config, 3 assumption, 4 verification.
    pub fn exit_code(&self) -> i32 {
        use ldpcdo::Error as E;
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Model(E::AssumptionViolated { .. } | E::DegenerateCurve(_) | E::Tie(..) | E::UndefinedSpread) => 3,
            CliError::Model(_) => 2,
            CliError::Verification(_) => 4,
        }
    }
}
