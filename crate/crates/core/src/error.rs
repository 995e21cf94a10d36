use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value {value} at node {node}")]
    NonFinite { node: usize, value: f64 },

    #[error("grid functions live on different grids")]
    GridMismatch,

    #[error(
        "shift {sigma} is numerically a discrete eigenvalue: smallest pivot {pivot_min:e} \
         is below {threshold:e}"
    )]
    NearSingularShift {
        sigma: f64,
        pivot_min: f64,
        threshold: f64,
    },

    #[error("start function is identically zero")]
    ZeroStart,

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("sample node {node} lies on a nodal set of iterate {iterate}")]
    NodalPoint { node: usize, iterate: usize },

    #[error("no sample point off the nodal set after {draws} draws")]
    NoValidPoint { draws: usize },

    #[error("estimate at iteration {index} is unavailable (history holds 0..={last})")]
    MissingIterate { index: usize, last: usize },

    #[error("no spectral component exceeds tolerance {tolerance:e}")]
    EmptyResult { tolerance: f64 },
}
