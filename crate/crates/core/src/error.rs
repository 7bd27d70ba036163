use thiserror::Error;

/// Errors raised by the spectral toolkit.
///
/// Each message starts with the variant name so that front ends can surface
/// it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NotHermitian: operator fails the hermiticity test at tolerance {tol:e}")]
    NotHermitian { tol: f64 },
    #[error(
        "UnboundedBelow: kinetic coefficient {g_pp} or discriminant {discriminant} is not positive"
    )]
    UnboundedBelow { g_pp: f64, discriminant: f64 },
    #[error("NotRealSpectrum: parameters classify as {class}")]
    NotRealSpectrum { class: String },
    #[error("InvalidRegion: {0}")]
    InvalidRegion(String),
    #[error("SingularDenominator: {0}")]
    SingularDenominator(String),
    #[error("DimensionTooSmall: truncation dimension {dim} is below the minimum of 2")]
    DimensionTooSmall { dim: usize },
    #[error("ConvergenceFailure: {0}")]
    ConvergenceFailure(String),
    #[error("InvalidOrder: order {order} exceeds the supported maximum {max}")]
    InvalidOrder { order: usize, max: usize },
    #[error("ZeroUnperturbedFrequency: w must be nonzero for the perturbation series")]
    ZeroUnperturbedFrequency,
    #[error("InsufficientOrders: need at least order {need}, series has order {have}")]
    InsufficientOrders { have: usize, need: usize },
    #[error("NoConvergedLevels: no level converged under truncation for both operators")]
    NoConvergedLevels,
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures of a numerical procedure rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure(_) | Error::NoConvergedLevels
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
