use thiserror::Error;

use crate::exactalg::factor::FactoredInt;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The pair (E, E') has j(E) = j(E') = 0 or j(E) = j(E') = 1728.
    #[error("invalid curve pair: {0}")]
    InvalidPair(String),

    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),

    #[error("factorization budget exceeded; unfactored cofactor {cofactor}")]
    FactorBudget {
        partial: FactoredInt,
        cofactor: num_bigint::BigUint,
    },

    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
