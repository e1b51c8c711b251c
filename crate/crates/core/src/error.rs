use thiserror::Error;

/// Errors raised by the simulation library.
///
/// `InvalidParameter` and `SizeLimit` indicate bad inputs; the remaining
/// variants are numeric contract violations (quantities that physics says
/// cannot happen drifted past tolerance) and abort a run rather than let
/// corrupt data propagate.
#[derive(Debug, Error)]
pub enum TopError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("size limit exceeded: N = {n} qubits, supported maximum is {max}")]
    SizeLimit { n: usize, max: usize },

    #[error("state norm drifted by {drift:.3e} at kick {kick} (limit {limit:.0e})")]
    NormDrift { kick: usize, drift: f64, limit: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("numeric contract violation at {context}: {source}")]
    NumericContract {
        context: String,
        #[source]
        source: Box<TopError>,
    },
}

impl TopError {
    /// Wrap an error with the run context (kick index, grid point) it
    /// occurred in.
    pub fn in_context(self, context: impl Into<String>) -> TopError {
        TopError::NumericContract {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, TopError>;
