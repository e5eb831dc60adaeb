use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is out of range: expected {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error(
        "cutoff {cutoff} leaves a truncated tail of {tail:e} (> {tail_eps:e}); \
         cutoff {required} is required"
    )]
    Truncation {
        cutoff: usize,
        tail: f64,
        tail_eps: f64,
        required: usize,
    },

    #[error("dimension {dim} exceeds the memory guard of {limit}")]
    Size { dim: usize, limit: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subsystem {index} does not exist in a {count}-partite operator")]
    Subsystem { index: usize, count: usize },

    #[error("golden-section refinement did not converge after {iterations} iterations (bracket width {width:e})")]
    Convergence { iterations: usize, width: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        expected,
    }
}
