use alloc::string::String;
use core::fmt;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A cyclic factor below 2 was supplied.
    InvalidFactor(u64),
    /// The group order does not fit in the index types used for enumeration.
    OrderOverflow,
    RankMismatch {
        expected: usize,
        found: usize,
    },
    CoordinateOutOfRange {
        index: usize,
        value: u64,
        modulus: u64,
    },
    RankOutOfRange {
        rank: usize,
        order: usize,
    },
    /// Operands were drawn from different groups.
    GroupMismatch,
    /// The operation needs a group with at least two elements.
    TrivialGroup,
    /// The operation needs a nontrivial character.
    TrivialCharacter,
    /// Exhaustive work was refused because the group is above the configured limit.
    LimitExceeded {
        order: usize,
        limit: usize,
    },
    /// The Fourier triple count did not land near an integer.
    FourierInconsistent {
        value: f64,
        imaginary: f64,
    },
    /// The character order is not congruent to 1 modulo 6.
    OrderNotOneModSix(u64),
    /// Density is 0 or 1, so the special-direction bound is undefined.
    DegenerateDensity,
    /// Capacity times length is below the requested mass.
    Infeasible,
    InvalidParameter(&'static str),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidFactor(m) => write!(f, "cyclic factor {m} is below 2"),
            Error::OrderOverflow => f.write_str("group order overflows the supported range"),
            Error::RankMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Error::CoordinateOutOfRange {
                index,
                value,
                modulus,
            } => write!(f, "coordinate {index} is {value}, outside [0, {modulus})"),
            Error::RankOutOfRange { rank, order } => {
                write!(
                    f,
                    "element index {rank} is outside a group of order {order}"
                )
            }
            Error::GroupMismatch => f.write_str("operands belong to different groups"),
            Error::TrivialGroup => f.write_str("the trivial group is not supported here"),
            Error::TrivialCharacter => f.write_str("a nontrivial character is required"),
            Error::LimitExceeded { order, limit } => write!(
                f,
                "group order {order} exceeds the enumeration limit {limit}"
            ),
            Error::FourierInconsistent { value, imaginary } => write!(
                f,
                "Fourier triple count {value} (imaginary part {imaginary}) is not near an integer"
            ),
            Error::OrderNotOneModSix(q) => {
                write!(f, "character order {q} is not congruent to 1 mod 6")
            }
            Error::DegenerateDensity => f.write_str("subset must be nonempty and proper"),
            Error::Infeasible => f.write_str("capacity times length is below the required mass"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
