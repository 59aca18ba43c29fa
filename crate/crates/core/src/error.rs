use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrime(u32),
    #[error("extension degree {0} out of range 1..=8")]
    DegreeOutOfRange(u32),
    #[error("field size {size} exceeds the configured cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("destination field is not a quadratic extension of the source field")]
    NotQuadraticExtension,
    #[error("no root of the source modulus in the destination field")]
    NoRoot,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("singular Weierstrass equation (discriminant is zero)")]
    SingularCurve,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("point is not fixed by Frobenius")]
    NotSigmaFixed,
    #[error("point is fixed by Frobenius, it does not define a degree-2 place")]
    SigmaFixedPoint,
    #[error("class data invariant violated: {0}")]
    Inconsistent(String),
    #[error("weight h2/2 requested with odd h2 = {0}")]
    NonIntegralWeight(usize),
    #[error("depth {depth} below the minimum {min}")]
    DepthTooSmall { depth: u32, min: u32 },
    #[error("vertex variant has no pullback to decomposable classes")]
    UnsupportedVariant,
    #[error("cusp space dimension {computed} differs from r'+1-h2 = {expected}")]
    DimensionMismatch { computed: usize, expected: i64 },
    #[error("empty Eisenstein solution space")]
    EmptySolutionSpace,
    #[error("inconsistent generalized eigen system (relative residual {0:e})")]
    InconsistentSystem(f64),
    #[error("derivative order {order} does not fit the character (chi^2 = 1: {chi_squared_trivial})")]
    WrongOrderForCharacter { order: u8, chi_squared_trivial: bool },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
