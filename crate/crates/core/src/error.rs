use thiserror::Error;

/// Which line of a Cayley table broke the Latin-square property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("MalformedTable: {0}")]
    MalformedTable(String),

    #[error("NotLatinSquare: {line} {index} repeats element {value}")]
    NotLatinSquare {
        line: Line,
        index: usize,
        value: usize,
    },

    #[error("NoIdentity: no element acts as a two-sided identity")]
    NoIdentity,

    #[error("NoInverse: element {element} has no two-sided inverse")]
    NoInverse { element: usize },

    #[error("NotAssociative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("NotAPermutation: generator {generator} is not a bijection on 0..{degree}")]
    NotAPermutation { generator: usize, degree: usize },

    #[error("EmptyGeneratorSet: at least one generator is required")]
    EmptyGeneratorSet,

    #[error("ClosureCapExceeded: generated group has more than {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("IndexOutOfRange: index {index} is not below {bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("NotASubgroup: {0}")]
    NotASubgroup(String),

    #[error("SubgroupMismatch: subgroup belongs to a different group")]
    SubgroupMismatch,

    #[error("GroupMismatch: operands belong to different groups")]
    GroupMismatch,

    #[error("DegenerateSpectrum: eigenvalues still collide after {retries} re-randomizations")]
    DegenerateSpectrum { retries: usize },

    #[error("OrthogonalityFailure: character table deviates from orthonormality by {deviation:e}")]
    OrthogonalityFailure { deviation: f64 },

    #[error("NonIntegralDegree: irreducible degree estimate {estimate} is not an integer")]
    NonIntegralDegree { estimate: f64 },

    #[error(
        "NonIntegralMultiplicity: irrep {irrep} has multiplicity {re}{im:+}i (residual {residual:e})"
    )]
    NonIntegralMultiplicity {
        irrep: usize,
        re: f64,
        im: f64,
        residual: f64,
    },

    #[error("DimensionMismatch: sum of m*d is {actual}, expected {expected}")]
    DimensionMismatch { expected: u64, actual: u64 },

    #[error("InvalidDimension: dim V must be at least 1")]
    InvalidDimension,

    #[error("OracleTooLarge: oracle matrix would be {size}x{size}, cap is {cap}")]
    OracleTooLarge { size: usize, cap: usize },

    #[error("InvalidFunction: {0}")]
    InvalidFunction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
