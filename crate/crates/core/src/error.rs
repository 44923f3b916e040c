use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested object has no meaningful structure in this dimension
    /// (the one-dimensional parking polytope is a single point).
    #[error("degenerate dimension: {0}")]
    DegenerateDimension(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// A computation would exceed its configured work budget.
    #[error("resource bound exceeded in {method}: {required} units requested, budget is {budget}")]
    ResourceBound {
        method: &'static str,
        required: u128,
        budget: u128,
    },

    /// An exact identity that must hold did not (e.g. a division that
    /// should have no remainder). Always indicates a bug.
    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
