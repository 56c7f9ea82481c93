use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A sum over a sequence with nonzero tail was requested.
    #[error("series is not summable: operand has a nonzero constant tail")]
    NonSummable,
    /// `t_solve` was given a point outside dom(T).
    #[error("point is not in the domain of T: suffix-sum recurrence ends at a nonzero S_1")]
    NotInDomain,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sample of graph points is empty")]
    EmptySample,
    /// An internal cross-check between two independent computations disagreed.
    #[error("certificate check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
