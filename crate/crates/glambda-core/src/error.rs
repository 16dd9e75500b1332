use thiserror::Error;

/// Errors raised by operations whose domain is restricted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symmetrized product requires at least one factor")]
    EmptyProduct,
    #[error("the zero operator has no principal symbol")]
    ZeroOperator,
    #[error("alpha coefficient requires p <= j, got p = {p}, j = {j}")]
    AlphaIndex { p: usize, j: usize },
    #[error("order {k} must be even")]
    OddOrder { k: usize },
    #[error("order {k} out of range for n = {n}")]
    OrderOutOfRange { n: usize, k: usize },
    #[error("solver limited to n <= {max}, got n = {n}")]
    SolverSize { n: usize, max: usize },
}
