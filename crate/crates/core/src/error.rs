use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid point ({x1}, {x2}): coordinates must be finite and non-negative")]
    InvalidPoint { x1: f64, x2: f64 },
    #[error("points are not ordered as required: {0}")]
    Ordering(&'static str),
    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),
    #[error("degenerate region: {0}")]
    DegenerateRegion(&'static str),
    #[error("duplicate point ({x1}, {x2}) in configuration")]
    DuplicatePoint { x1: f64, x2: f64 },
    #[error("point ({x1}, {x2}) lies outside the configuration region")]
    OutsideRegion { x1: f64, x2: f64 },
    #[error("instance too large for exhaustive search: {points} points (limit {limit})")]
    TooLarge { points: usize, limit: usize },
    #[error("more than {cap} maximizers")]
    CapExceeded { cap: usize },
    #[error("eigensolver did not converge at index {index}")]
    NoConvergence { index: usize },
}
