use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported through the various report types.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("period must be positive, got {0}")]
    ZeroPeriod(usize),
    #[error("window has {got} entries but the period is {n}")]
    WindowLength { n: usize, got: usize },
    #[error("window values {first} and {second} are congruent modulo {n}")]
    ResidueCollision { n: usize, first: i64, second: i64 },
    #[error("window sum is {got}, expected {expected}")]
    WindowSum { expected: i64, got: i64 },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is not congruent to a valid shift of a window")]
    BadShiftedWindow(String),
    #[error("transposition requires i < j with j not congruent to i mod {n}, got ({i}, {j})")]
    BadTransposition { n: usize, i: i64, j: i64 },
    #[error("a code needs at least one zero entry, got {0:?}")]
    AllPositiveCode(Vec<u64>),
    #[error("support must be a proper subset of 1..={n}")]
    FullSupport { n: usize },
    #[error("inversion set fails condition ({condition}): witness {witness}")]
    InversionSet { condition: u8, witness: String },
    #[error("partitions {0:?} and {1:?} have different weights")]
    WeightMismatch(Vec<u32>, Vec<u32>),
    #[error("partition {partition:?} has a part larger than {max}")]
    NotInPar { partition: Vec<u32>, max: u32 },
    #[error("fixed-point-free involutions need an even period, got {0}")]
    OddPeriod(usize),
    #[error("{0} is not a fixed-point-free involution")]
    NotFpf(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("coefficient overflow while {0}")]
    Overflow(&'static str),
    #[error("resource cap exceeded: {what} would exceed {cap}")]
    ResourceCap { what: &'static str, cap: usize },
    #[error("{0} is not an element of the universe")]
    NotInUniverse(String),
    #[error("{y} is not covered by {z}")]
    NotACover { y: String, z: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
