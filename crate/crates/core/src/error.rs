use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("determinant vanishes: {j}*{weight} is 0 mod {order}")]
    VanishingDeterminant { order: u32, weight: u32, j: u32 },

    #[error("cyclotomic element is not rational")]
    NotRational,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("missing generalized Fujiki constant for {0}")]
    MissingMonomial(String),

    #[error("degree overflow: k = {k} must be < n = {n}")]
    DegreeOverflow { k: u32, n: u32 },

    #[error("inequality violated: C(c2^2) = {lhs} < {rhs}")]
    InequalityViolated { lhs: String, rhs: String },

    #[error("all roots are equal; the dispersion bound degenerates")]
    AllRootsEqual,

    #[error("C(c2) is irrational: {0}")]
    IrrationalC2(String),

    #[error("singular linear system")]
    SingularSystem,

    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),

    #[error("sequential solve failed at k = {0}: the coefficient of c_2k vanishes")]
    SolveFailure(u32),

    #[error("glued graph cannot be reduced: {0}")]
    UnreducibleGraph(String),

    #[error("no value for graph {0}")]
    UnknownGamma(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
