use thiserror::Error;

/// Front-end failures that are not raised by the core library.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("InvalidArgument: {0}")]
    Invalid(String),
    #[error("NoStableLevels: {0}")]
    NoStableLevels(String),
}

/// Process exit code for a failed run: 2 for bad input, 3 for numerical
/// failure, 1 for anything else (I/O and the like).
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<swanson_core::Error>() {
        return if e.is_numerical() { 3 } else { 2 };
    }
    match err.downcast_ref::<CliError>() {
        Some(CliError::Invalid(_)) => 2,
        Some(CliError::NoStableLevels(_)) => 3,
        None => 1,
    }
}
