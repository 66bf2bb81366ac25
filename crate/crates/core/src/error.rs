use thiserror::Error;

/// Errors raised by the geometry, variational and ODE routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    /// Isotropic tangent direction (|ẋ| or |X₁₂| below the admissibility threshold).
    #[error("non-admissible at {at}: |{what}| = {value:e} is below the admissibility threshold")]
    NonAdmissible {
        at: String,
        what: &'static str,
        value: f64,
    },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("singular denominator {value:e} at {at}")]
    SingularDenominator { at: String, value: f64 },
    #[error("no convergence after {iterations} iterations (gradient norm {gradient_norm:e})")]
    NoConvergence {
        iterations: usize,
        gradient_norm: f64,
    },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("invalid radius {0}: radii must be positive")]
    InvalidRadius(f64),
    #[error("singularity encountered at t = {t}: denominator {value:e}")]
    SingularityEncountered { t: f64, value: f64 },
    #[error("integration step failed at t = {t}: non-finite state")]
    StepFailure { t: f64 },
    #[error("fixed-point iteration is not contracting: ratio {ratio} at iteration {iteration}")]
    NonContraction { iteration: usize, ratio: f64 },
    #[error("fixed-point iteration exceeded {iterations} iterations (distance {distance:e})")]
    MaxIterExceeded { iterations: usize, distance: f64 },
    #[error("division by zero: profile value {value:e} at t = {t}")]
    DivisionByZero { t: f64, value: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
