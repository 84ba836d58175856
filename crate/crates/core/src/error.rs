use thiserror::Error;

/// Errors raised by generation, verification and zero certification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("binomial({m}, {k}) requires k <= m")]
    BinomialRange { m: u64, k: u64 },

    #[error(
        "hypergeometric series does not terminate: no upper parameter is a nonpositive integer"
    )]
    NonTerminating,

    #[error("lower hypergeometric parameter hits a pole: factor c+{offset} of (c)_k vanishes")]
    LowerParameterPole { offset: u64 },

    #[error("polynomial is not even: coefficient of x^{degree} is nonzero")]
    NotEven { degree: usize },

    #[error("division by (x - {root}) leaves a nonzero remainder")]
    NonzeroRemainder { root: String },

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("polynomial is not squarefree: gcd with its derivative has degree {0}")]
    NotSquarefree(usize),

    #[error("moment functional is not quasi-definite: norm of p_{0} vanishes")]
    NotQuasiDefinite(usize),

    #[error("certification failure: {0}")]
    Certification(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
