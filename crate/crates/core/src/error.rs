use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("frames differ by {gap:e}")]
    FrameMismatch { gap: f64 },
    #[error("invalid bounds ({0}, {1})")]
    InvalidBounds(f64, f64),
    #[error("normal translation by {u} is not admissible for curvature {kappa}")]
    InadmissibleU { u: f64, kappa: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("curve is not condensed")]
    NotCondensed,
    #[error("curve is not diffuse")]
    NotDiffuse,
    #[error("no axis keeps every heading in an open half-plane")]
    NoAxis,
    #[error("area root-finding missed tolerance: residual {0:e}")]
    GridTooCoarse(f64),
    #[error("target frame is not reachable by a condensed curve")]
    Unreachable,
    #[error("attach window invalid: t0={t0}, eps={eps}, n={n}")]
    BadWindow { t0: f64, eps: f64, n: usize },
    #[error("graft pairing violates the antipodal condition: {0}")]
    PairingViolation(String),
    #[error("curve does not have strictly positive curvature")]
    NotLocallyConvex,
    #[error("total turning differs: {0} vs {1}")]
    TurningMismatch(f64, f64),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("total turning {0} is incompatible with the end headings")]
    TurningIncompatible(f64),
    #[error("curve leaves the curvature bounds")]
    OutOfBounds,
    #[error("nonorientable surfaces need symmetric bounds, got ({0}, {1})")]
    AsymmetricBoundsOnNonorientable(f64, f64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("parameter {0} out of range")]
    ParameterOutOfRange(f64),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// Failures of a numerical procedure rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::GridTooCoarse(_) | Error::NoAxis)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
