use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("function value at x = {x} is not finite")]
    NonFiniteValue { x: f64 },

    #[error("function is not 2π-periodic: |f(x + 2π) - f(x)| = {difference:.3e} at x = {x}")]
    NotPeriodic { x: f64, difference: f64 },

    #[error("requested order {k} exceeds coefficient order {order}")]
    OrderExceeded { k: usize, order: usize },

    #[error("no sign change of g found on interval {k} after scanning {cells} cells")]
    RootNotFound { k: usize, cells: usize },

    #[error("quadrature did not converge: achieved {achieved:.3e}, requested {requested:.3e}")]
    QuadratureDidNotConverge { achieved: f64, requested: f64 },

    #[error("minimax exchange did not converge after {iterations} iterations (last change {last_change:.3e})")]
    MinimaxDidNotConverge { iterations: usize, last_change: f64 },

    #[error("corpus member '{name}' failed class membership: {reason}")]
    ClassMembership { name: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
