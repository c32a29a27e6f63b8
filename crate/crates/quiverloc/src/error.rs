use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator evaluated to zero at the sampled point. Callers resample.
    #[error("division by zero")]
    DivisionByZero,
    #[error("series shape mismatch: ({0} vars, trunc {1}) vs ({2} vars, trunc {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("series has a non-invertible constant term")]
    NotInvertible,
    #[error("infinite product base has a nonzero constant term")]
    NonTerminating,
    #[error("repeated pole {0}")]
    PoleCollision(String),
    #[error("could not sample a usable context after {0} attempts")]
    RetryExhausted(usize),
    #[error("limit diverges")]
    Diverges,
    #[error("too many fixed points: estimated {0}, cap {1}")]
    Infeasible(u64, u64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
