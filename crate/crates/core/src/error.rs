use thiserror::Error;

/// Every failure the library can report. Variant names double as the
/// machine-readable error codes used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("root orders {0} and {1} differ and coercion is disabled")]
    IncompatibleRootOrders(u32, u32),
    #[error("invalid grading group: {0}")]
    InvalidGroup(String),
    #[error("exponent matrix is not well defined: {0}")]
    IllDefinedBicharacter(String),
    #[error("not a commutation factor: {0}")]
    InvalidCommutationFactor(String),
    #[error("incompatible grading groups")]
    IncompatibleGroups,
    #[error("no NS-multiplier with root order {0}; retry with a larger root order")]
    NoSolutionAtThisRootOrder(u32),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("not a multiplier in the NS-set of the commutation factor")]
    NotNsMultiplier,
    #[error("structure constants not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("degree violation: {0} * {1} has a component on {2}")]
    DegreeViolation(String, String, String),
    #[error("not lambda-commutative at basis pair ({0}, {1})")]
    NotLambdaCommutative(String, String),
    #[error("no unit: {0}")]
    NoUnit(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("operands belong to different algebras")]
    MixedAlgebras,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("scalar is not homogeneous")]
    InhomogeneousScalar,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("no homogeneous unit of degree {0}")]
    MissingUnit(String),
    #[error("matrix is not homogeneous of degree 0")]
    NotDegreeZero,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("entry at ({0}, {1}) has an odd-degree component")]
    OddEntries(usize, usize),
    #[error("algebra has no homogeneous unit of degree {0}")]
    NotCrossedProduct(String),
    #[error("degree vector is not parity-sorted (even degrees must precede odd ones); reorder with change_basis and a permutation matrix")]
    NotParitySorted,
    #[error("matrix is not homogeneous of even degree")]
    OddDegree,
    #[error("odd block X11 is singular")]
    SingularOddBlock,
    #[error("entries at ({0}, {1}) and ({2}, {3}) do not commute")]
    NonCommutingEntries(usize, usize, usize, usize),
    #[error("parse error in {0}: {1}")]
    Parse(String, String),
}

/// Broad class of an error, used to pick CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Math,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::IncompatibleRootOrders(..) => "IncompatibleRootOrders",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::IllDefinedBicharacter(_) => "IllDefinedBicharacter",
            Error::InvalidCommutationFactor(_) => "InvalidCommutationFactor",
            Error::IncompatibleGroups => "IncompatibleGroups",
            Error::NoSolutionAtThisRootOrder(_) => "NoSolutionAtThisRootOrder",
            Error::UnsupportedGroup(_) => "UnsupportedGroup",
            Error::NotNsMultiplier => "NotNsMultiplier",
            Error::NotAssociative(..) => "NotAssociative",
            Error::DegreeViolation(..) => "DegreeViolation",
            Error::NotLambdaCommutative(..) => "NotLambdaCommutative",
            Error::NoUnit(_) => "NoUnit",
            Error::InvalidParams(_) => "InvalidParams",
            Error::MixedAlgebras => "MixedAlgebras",
            Error::NotInvertible => "NotInvertible",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::InhomogeneousScalar => "InhomogeneousScalar",
            Error::NotSquare => "NotSquare",
            Error::Singular => "Singular",
            Error::MissingUnit(_) => "MissingUnit",
            Error::NotDegreeZero => "NotDegreeZero",
            Error::InvalidOrdering(_) => "InvalidOrdering",
            Error::OddEntries(..) => "OddEntries",
            Error::NotCrossedProduct(_) => "NotCrossedProduct",
            Error::NotParitySorted => "NotParitySorted",
            Error::OddDegree => "OddDegree",
            Error::SingularOddBlock => "SingularOddBlock",
            Error::NonCommutingEntries(..) => "NonCommutingEntries",
            Error::Parse(..) => "ParseError",
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(..) => ErrorKind::Parse,
            Error::DivisionByZero
            | Error::NotInvertible
            | Error::Singular
            | Error::SingularOddBlock
            | Error::NoSolutionAtThisRootOrder(_) => ErrorKind::Math,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
