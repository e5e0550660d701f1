use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point must lie in the upper half-plane (imaginary part {0} is not positive)")]
    NotInUpperHalfPlane(f64),
    #[error("lamination weights must not both vanish")]
    ZeroLamination,
    #[error("quadratic differential coefficient must be nonzero")]
    ZeroDifferential,
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("adaptive quadrature exceeded the cap of {limit} panels")]
    PanelLimitExceeded { limit: usize },
    #[error("radial limit did not stabilize before t = {t_max}")]
    NoConvergence { t_max: f64 },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(&'static str),
    #[error("boundary limit {value} on arc {arc} exceeds the declared bound {bound}")]
    BoundViolated { arc: usize, value: f64, bound: f64 },
    #[error("certified bound {bound} is violated: found |value| = {value}")]
    BoundNotCertified { value: f64, bound: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
