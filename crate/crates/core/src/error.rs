use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} outside the supported range 1..=8")]
    Dimension(usize),
    #[error("matrix is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("basis is singular (determinant 0)")]
    SingularBasis,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is not positive definite: leading minor {0} is not positive")]
    NotPositiveDefinite(usize),
    #[error("tau must have positive imaginary part, got {0}")]
    NonPositiveImaginaryPart(f64),
    #[error("LLL parameter delta must lie in (1/4, 1), got {0}")]
    InvalidDelta(String),
    #[error("k = {k} outside 1..={dim}")]
    InvalidK { k: usize, dim: usize },
    #[error("no known constant in dimension {0}")]
    UnknownConstant(usize),
    #[error("operation requires dimension {expected}, got {found}")]
    WrongDimension { expected: String, found: usize },
    #[error("dimension {0} too small: codimension-one systole needs n >= 2")]
    DimensionTooSmall(usize),
    #[error("curvature must be positive and finite, got {0}")]
    NonPositiveCurvature(f64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid metric space: {0}")]
    InvalidMetric(String),
    #[error("subset size {size} outside 1..={n}")]
    InvalidSubsetSize { size: usize, n: usize },
    #[error("exhaustive search over C({n}, {size}) subsets exceeds the budget of {budget}")]
    SubsetBudgetExceeded { n: usize, size: usize, budget: u64 },
    #[error("space {0} is simply connected, so it has no noncontractible loops")]
    NotEssential(String),
    #[error(
        "Euler number 0 gives the trivial bundle T^3: b1 = 3 and fibers are not rationally \
         null-homologous, so their linking number is undefined"
    )]
    TrivialBundle,
    #[error("presentation has no relation with a unit coefficient on generator {0}")]
    NoUnitPivot(String),
    #[error("unsupported module presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
