use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Lie type `{0}`")]
    InvalidType(String),

    #[error("rank {rank} is not valid for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("sign vector `{0}` must consist of '+' and '-' characters")]
    InvalidSigns(String),

    #[error("sign vector has length {got}, expected rank {expected}")]
    SignLength { expected: usize, got: usize },

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("Weyl group of {ty} has order {order}, exceeding the enumeration cap {cap}")]
    CapExceeded { ty: String, order: u128, cap: usize },

    #[error("elements belong to different groups")]
    MismatchedTypes,

    #[error("unknown export format `{0}`")]
    UnknownFormat(String),

    #[error("Bruhat interval [{lower}, {upper}] has exactly one complete path in the graph")]
    DiamondViolation { lower: String, upper: String },

    #[error("no sign assignment makes the differentials square to zero")]
    Unsolvable,

    #[error("no nilpotent tau-functions are available for type {0}")]
    UnsupportedType(String),

    #[error("rank {rank} exceeds the tau-function bound {bound} for family {family}")]
    RankBound { family: char, rank: usize, bound: usize },

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("squared tau-function has odd minimal degree {0}")]
    OddSquaredDegree(usize),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("field F_{0} does not contain a square root of -1")]
    FieldNotSplit(u64),

    #[error("point count needs {tuples} tuples, budget is {budget}")]
    BudgetExceeded { tuples: u128, budget: u128 },

    #[error("group size {0} is outside the supported range")]
    SizeOutOfRange(usize),

    #[error("compact dual group of {0} is not a product of special orthogonal groups")]
    NotOrthogonal(String),

    #[error("closed form {closed_form} differs from brute-force count {brute_force}")]
    Mismatch { closed_form: String, brute_force: String },

    #[error("spectrum must have {expected} distinct real values summing to zero")]
    DegenerateSpectrum { expected: usize },

    #[error("window [-{0}, {0}] is too small: endpoint signs disagree with the dominant exponential")]
    WindowTooSmall(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
