use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid interval [{a}, {b}]: endpoints must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },
    #[error("coefficient series must hold at least one coefficient")]
    EmptySeries,
    #[error("trigonometric series must have odd length, got {0}")]
    EvenTrigLength(usize),
    #[error("invalid construction settings: {0}")]
    InvalidConfig(String),
    #[error("operands live on different intervals or bases")]
    Mismatch,
    #[error("operation requires a Chebyshev series")]
    NotChebyshev,
    #[error("sampled value at x = {x:?} is not finite")]
    NonFiniteSample { x: f64 },
    #[error("grid size {0} is not valid for this transform")]
    InvalidGrid(usize),
}
