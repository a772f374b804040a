use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported algebra dimension {0} (expected 1..=6)")]
    UnsupportedDimension(usize),

    #[error("element is not invertible: {0}")]
    Singular(String),

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    /// The point sits on the focal set where one coordinate is not
    /// determined. The limiting values of the determined coordinates are kept.
    #[error("degenerate coordinates ({reason}): eta -> {eta}, theta -> {theta}")]
    DegenerateCoordinates {
        reason: &'static str,
        eta: f64,
        theta: f64,
    },

    #[error("degenerate frame: tangent {0} vanishes")]
    DegenerateFrame(&'static str),

    #[error("projection pole: {0}")]
    Pole(String),

    #[error("finite-difference stencil leaves the field domain at {0:?}")]
    StencilOutsideDomain(Vec<f64>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ode integration failed: {0}")]
    Integration(String),
}
