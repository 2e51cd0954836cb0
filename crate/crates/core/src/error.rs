use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("post-selection is orthogonal to pre-selection; the weak value diverges")]
    OrthogonalPostSelection,

    #[error("closed-form observables require the balanced pre-selection (|H⟩+|V⟩)/√2")]
    UnsupportedPreSelection,

    #[error("dark port: post-selected power ratio {power:e} is too small for a mean position")]
    DarkPort { power: f64 },

    #[error("power ratio must be strictly positive to express a loss in dB")]
    ZeroPower,

    #[error("{0}")]
    OutOfRange(String),

    #[error("sin 2α · cos θ = {0} ≤ 0; the fractional loss cannot be inverted")]
    NonInvertible(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
