use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate structure constant for [e{i},e{j}] along e{k}")]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("bracket [e{0},e{0}] must vanish")]
    DiagonalEntry(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the Lie algebra does not satisfy the Jacobi identity")]
    NotValidated,
    #[error("J does not square to minus the identity")]
    NotAComplexStructure,
    #[error("the complex structure is not integrable")]
    NotIntegrable,
    #[error("incompatible metric: {0}")]
    IncompatibleMetric(String),
    #[error("the Lie algebra is not two-step solvable")]
    NotTwoStepSolvable,
    #[error("subspace is not J-invariant")]
    NotJInvariant,
    #[error("the Hermitian structure is not SKT")]
    NotSkt,
    #[error("the Hermitian structure is not of pure type II")]
    NotPureTypeII,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid pre-shear data: {0}")]
    InvalidPreShear(String),
    #[error("Jacobi identity fails")]
    JacobiFailed,
    #[error("not complex shear data: {0}")]
    NotComplexShearData(String),
    #[error("parameter constraint violated: {0}")]
    ParameterConstraintViolated(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unbound parameter '{0}'")]
    UnboundParameter(String),
    #[error("unknown algebra name '{0}'")]
    UnknownName(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
