use thiserror::Error;

/// Errors raised by the simulation and design routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Hilbert space: {0}")]
    InvalidSpace(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown factor label `{0}`")]
    UnknownLabel(String),

    #[error("partial trace needs at least one factor to keep")]
    EmptyKeepSet,

    #[error("operator is not Hermitian (relative deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("Fock cutoff {n_max} too small: truncated norm deficit {deficit:.3e}")]
    CutoffTooSmall { n_max: usize, deficit: f64 },

    #[error("decoherence blocks overlap on factor `{0}`")]
    OverlappingBlocks(String),

    #[error("operators do not commute (relative commutator norm {0:.3e})")]
    NonCommuting(f64),

    #[error("analytic propagation does not support loss channels")]
    LossesNotSupported,

    #[error("step size {step:e} s too large: generator norm x step = {product:.3e} (limit 0.1)")]
    StepTooLarge { step: f64, product: f64 },

    #[error("evolved state is not positive (smallest eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{found} quadrature nodes given, at least {required} required")]
    TooFewNodes { found: usize, required: usize },

    #[error("no feasible design point on the search grid")]
    InfeasibleGrid,

    #[error("empty input: {0}")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
