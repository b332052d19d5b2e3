use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("form must be nonzero")]
    ZeroForm,
    #[error("point must have a nonzero coordinate")]
    ZeroPoint,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("inhomogeneous input: term of degree {found} in a form of degree {expected}")]
    InhomogeneousInput { expected: u32, found: u32 },
    #[error("at most {max} variables are supported, got {found}")]
    TooManyVariables { max: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("degree {degree} out of range {lo}..={hi}")]
    DegreeOutOfRange { degree: u32, lo: u32, hi: u32 },
    #[error("degree {d} too small for a scheme of degree {scheme_degree}")]
    DegreeTooSmall { d: u32, scheme_degree: usize },
    #[error("variable count mismatch: expected {expected}, found {found}")]
    WrongVariableCount { expected: usize, found: usize },
    #[error("points are proportional")]
    ProportionalPoints,
    #[error("plane basis vectors are dependent")]
    DependentBasis,
    #[error("certificate does not belong to this form")]
    CertificateMismatch,
    #[error("the supplied terms do not sum to the form")]
    NotADecomposition,
    #[error("point {0} appears twice")]
    RepeatedPoint(String),
    #[error("decomposition coefficient is zero")]
    ZeroCoefficient,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a Hilbert polynomial: {0}")]
    NotAHilbertPolynomial(String),
    #[error("at most {max} lines are supported, got {found}")]
    TooManyLines { max: usize, found: usize },
    #[error("directions are not in general linear position")]
    GeneralPositionFailure,
    #[error("no direction outside the tangent star after {0} attempts")]
    NoGenericDirection(usize),
    #[error("invalid tensor dimensions: {0}")]
    InvalidDims(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Name of the variant, for reports and diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ZeroForm => "ZeroForm",
            Error::ZeroPoint => "ZeroPoint",
            Error::Syntax { .. } => "Syntax",
            Error::InhomogeneousInput { .. } => "InhomogeneousInput",
            Error::TooManyVariables { .. } => "TooManyVariables",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::WrongVariableCount { .. } => "WrongVariableCount",
            Error::ProportionalPoints => "ProportionalPoints",
            Error::DependentBasis => "DependentBasis",
            Error::CertificateMismatch => "CertificateMismatch",
            Error::NotADecomposition => "NotADecomposition",
            Error::RepeatedPoint(_) => "RepeatedPoint",
            Error::ZeroCoefficient => "ZeroCoefficient",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::NotAHilbertPolynomial(_) => "NotAHilbertPolynomial",
            Error::TooManyLines { .. } => "TooManyLines",
            Error::GeneralPositionFailure => "GeneralPositionFailure",
            Error::NoGenericDirection(_) => "NoGenericDirection",
            Error::InvalidDims(_) => "InvalidDims",
            Error::DimMismatch(_) => "DimMismatch",
        }
    }
}
