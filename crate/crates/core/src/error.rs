use thiserror::Error;

/// Errors raised by the geometry, operator, solver and analysis layers.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("domain error: {coordinate} = {value} {reason}")]
    Domain { coordinate: &'static str, value: f64, reason: &'static str },

    #[error("chart is singular at first coordinate {c1} (polar origin)")]
    SingularChart { c1: f64 },

    #[error("operation requires a {expected} chart, got {found}")]
    ChartMismatch { expected: &'static str, found: &'static str },

    #[error("overflow: |a·{coordinate}| = {value} exceeds the hyperbolic-function range")]
    Overflow { coordinate: &'static str, value: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("step size underflow approaching a singular point; last reached t = {t_reached}")]
    SingularApproach { t_reached: f64 },

    #[error("Taylor series failed to converge at t = {t} with order {order}")]
    NonConvergence { t: f64, order: usize },
}

pub type Result<T, E = FlowError> = std::result::Result<T, E>;
