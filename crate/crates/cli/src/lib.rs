//! Experiment driver: verification suites, scattering solves and
//! preconditioner benchmarks, each producing a [`report::Report`].

pub mod config;
pub mod experiments;
pub mod report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] arcbie_core::Error),
    #[error(transparent)]
    Symbol(#[from] arcbie_symbol::Error),
}

impl CliError {
    /// `2` for usage and configuration problems, `1` for failures during a run.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}
