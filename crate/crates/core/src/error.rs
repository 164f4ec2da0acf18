use thiserror::Error;

/// Errors raised across the library.
///
/// Variants split into two groups: precondition/domain problems with the
/// caller's input, and numerical failures. The CLI maps them to distinct exit
/// codes through [`Error::is_numerical`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("step size underflow at t = {t}")]
    StepFailure { t: f64 },

    #[error("step limit of {max_steps} exceeded at t = {t}")]
    StepLimit { t: f64, max_steps: usize },

    #[error("non-finite state or derivative at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("eigenvalue {index} did not converge within {iterations} iterations")]
    ConvergenceFailure { index: usize, iterations: usize },

    #[error("closed-form trajectory has blown up (blow-up at t = {t_blowup})")]
    BlowupReached { t_blowup: f64 },

    #[error("confinement quadratic has no real roots (discriminant {discriminant})")]
    NoRealRoots { discriminant: f64 },

    #[error("orbit collapsed onto the centre at t = {t}")]
    CollapseToCenter { t: f64 },

    #[error("potential does not support bound states ({0})")]
    NotBound(String),
}

impl Error {
    /// True for failures of the numerical machinery, false for bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::StepFailure { .. }
                | Error::StepLimit { .. }
                | Error::NonFiniteState { .. }
                | Error::ConvergenceFailure { .. }
                | Error::CollapseToCenter { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
