use alloc::string::String;
use core::fmt;

/// Errors raised by the geometric operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inputs of different dimensions were mixed.
    DimensionMismatch { expected: usize, found: usize },
    /// An operation that needs at least one point received none.
    EmptyInput,
    /// A strict feasibility system has no solution.
    Infeasible(String),
    /// An h-vector was requested for a lattice with a non-simplex proper face.
    NotSimplicial,
    /// The hull does not span its ambient space.
    NotFullDimensional { intrinsic: usize, ambient: usize },
    /// A polarity center is not strictly inside the hull.
    CenterNotInterior,
    /// A slicing hyperplane does not cross the relative interior of the hull.
    PlaneMissesInterior,
    /// A direction vector was zero or had no rational length.
    BadDirection(String),
    /// A bisection or halving search hit its floor; names the failing condition.
    SearchExhausted { condition: String },
    /// Malformed input values.
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyInput => f.write_str("empty input"),
            Error::Infeasible(what) => write!(f, "infeasible: {what}"),
            Error::NotSimplicial => f.write_str("lattice is not simplicial"),
            Error::NotFullDimensional { intrinsic, ambient } => write!(
                f,
                "hull is {intrinsic}-dimensional in a {ambient}-dimensional space"
            ),
            Error::CenterNotInterior => f.write_str("center is not strictly interior"),
            Error::PlaneMissesInterior => {
                f.write_str("hyperplane does not cross the interior of the hull")
            }
            Error::BadDirection(why) => write!(f, "bad direction: {why}"),
            Error::SearchExhausted { condition } => {
                write!(f, "parameter search exhausted; failing condition: {condition}")
            }
            Error::InvalidInput(why) => write!(f, "invalid input: {why}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
