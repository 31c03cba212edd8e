use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into three groups: precondition violations (the input is
/// outside the domain of the operation), parse errors (malformed text or
/// JSON), and internal consistency failures which indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not totally real: a negative radicand carries a nonzero coordinate")]
    NotTotallyReal,
    #[error("square root of a non-positive rational")]
    NonPositiveRadicand,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("subset recombination would need subsets wider than {cap}")]
    RecombinationCapExceeded { cap: usize },
    #[error("coefficients belong to different number fields")]
    MixedModuli,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("matrix is not semisimple")]
    NotSemisimple,
    #[error("Bezout partition of unity failed: the idempotents do not sum to 1")]
    PartitionOfUnityFailure,
    #[error("covariant system does not annihilate the matrix")]
    SystemMatrixMismatch,
    #[error("factor does not split over the requested quadratic extension")]
    DoesNotSplit,
    #[error("minimal polynomial has an irreducible factor of degree {degree} > 2")]
    FactorDegreeTooHigh { degree: usize },
    #[error("the nonzero eigenvalues of AᵀA are not all rational")]
    SingularValuesNotRational,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that mean "the input violates a precondition",
    /// as opposed to malformed input or a library bug.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::Internal(_) | Error::PartitionOfUnityFailure
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotTotallyReal => "NotTotallyReal",
            Error::NonPositiveRadicand => "NonPositiveRadicand",
            Error::BothZero => "BothZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            Error::RecombinationCapExceeded { .. } => "RecombinationCapExceeded",
            Error::MixedModuli => "MixedModuli",
            Error::SingularMatrix => "SingularMatrix",
            Error::ZeroMatrix => "ZeroMatrix",
            Error::NotSemisimple => "NotSemisimple",
            Error::PartitionOfUnityFailure => "PartitionOfUnityFailure",
            Error::SystemMatrixMismatch => "SystemMatrixMismatch",
            Error::DoesNotSplit => "DoesNotSplit",
            Error::FactorDegreeTooHigh { .. } => "FactorDegreeTooHigh",
            Error::SingularValuesNotRational => "SingularValuesNotRational",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
