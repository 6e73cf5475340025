use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Compute(#[from] spinsec::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(e) if is_usage(e) => 2,
            _ => 1,
        }
    }
}

/// Library errors that come from bad arguments rather than failed checks.
fn is_usage(e: &spinsec::Error) -> bool {
    use spinsec::Error::*;
    matches!(
        e,
        RankOutOfRange { .. } | InvalidArgument(_) | OutOfRange(_) | NotDominant(_) | OddRank(_)
    )
}
