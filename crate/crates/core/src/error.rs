use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Domain(&'static str),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("time {t} is outside the validity window [{start}, {end}]")]
    OutOfPhase { t: f64, start: f64, end: f64 },
    #[error("time {t} is beyond the plan horizon {horizon}")]
    OutOfRange { t: f64, horizon: f64 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("singular front at t = {t}: sigma vanishes while the fluxes are incompatible")]
    Singular { t: f64 },
    #[error("test-function support reaches r = 0")]
    UnsupportedRegion,
    #[error("integration failed at t = {t}: step size underflow")]
    StepSize { t: f64 },
}
