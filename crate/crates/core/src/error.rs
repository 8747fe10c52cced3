use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed field contexts")]
    FieldMismatch,
    #[error("mixed torus contexts")]
    TorusMismatch,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("all components of the map vanish")]
    AllZero,
    #[error("composition is identically (0:0:0)")]
    DegenerateComposition,
    #[error("inverse check failed")]
    NotInverse,
    #[error("coefficient size {bits} bits exceeds the cap of {cap} bits")]
    CoefficientCap { bits: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("sequence too short: need at least {need}, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("indeterminacy locus has positive dimension")]
    PositiveDimensionalLocus,
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("map does not preserve the pencil of lines through the given point")]
    PencilNotPreserved,
    #[error("lattice context mismatch: rank {0} vs {1}")]
    LatticeMismatch(usize, usize),
    #[error("Halphen operations need r = 9, got r = {0}")]
    NeedNinePoints(usize),
    #[error("class is not orthogonal to K (D.K = {0})")]
    NotOrthogonalToK(i64),
    #[error("invalid Halphen data: {0}")]
    InvalidHalphen(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),
    #[error("element has finite order")]
    FiniteOrder,
    #[error("unsupported shape: {0}")]
    Shape(String),
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("|m| = |n| is outside the scope of this check")]
    EqualAbsoluteExponents,
    #[error("m*n must be nonzero")]
    ZeroExponent,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("k must be odd, got {0}")]
    EvenK(i64),
    #[error("character undefined: {0}")]
    CharacterUndefined(String),
    #[error("relation failed: {0}")]
    RelationFailed(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("no inverse could be computed: {0}")]
    NoInverse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Input errors map to CLI exit code 2, computation errors to 1.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::FieldMismatch
                | Error::TorusMismatch
                | Error::LatticeMismatch(..)
                | Error::InvalidArgument(_)
                | Error::TooShort { .. }
                | Error::EvenK(_)
                | Error::ZeroExponent
                | Error::EqualAbsoluteExponents
                | Error::NotOrthogonalToK(_)
                | Error::NeedNinePoints(_)
                | Error::NotUnimodular(_)
                | Error::SingularMatrix
                | Error::NotHomogeneous
                | Error::DegreeMismatch(..)
                | Error::AllZero
        )
    }
}
