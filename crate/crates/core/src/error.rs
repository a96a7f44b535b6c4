use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    /// The inputs are valid but the requested analysis needs a different
    /// parameter regime (e.g. period-two solving above the threshold).
    #[error("parameter regime violated: {0}")]
    Regime(String),

    /// An argument lies outside the domain of a map.
    #[error("domain error: {0}")]
    Domain(String),

    /// The two independent routes to the critical value disagree.
    #[error("critical value mismatch: closed form {closed_form}, scalar solve {scalar}")]
    CriticalMismatch { closed_form: f64, scalar: f64 },

    /// Exhaustive enumeration would exceed the configured vertex budget.
    #[error("finite tree has {required} vertices, enumeration limit is {limit}")]
    SizeGuard { required: usize, limit: usize },

    #[error("numeric failure: {0}")]
    Numeric(String),
}
