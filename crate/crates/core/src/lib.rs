//! Exact computational engine for the Sylow p-subgroup of the Steinberg
//! triality group over `F_{q³}`, built as an explicit matrix group.
//!
//! The crate constructs the group from its Chevalley generators, linearises
//! it monomially onto a 12-dimensional `F_q`-space of patterns, classifies
//! the orbit modules and their stabilizers, partitions the group into
//! superclasses, and produces the supercharacter table in exact cyclotomic
//! arithmetic. Everything is verified against independent brute-force
//! oracles at desk scale (`q = 3` exhaustively, `q = 5` sampled).

pub mod chevalley;
pub mod cli;
pub mod cyclo;
pub mod field;
pub mod group;
pub mod mat;
pub mod orbit;
pub mod pattern;
pub mod superchar;
pub mod superclass;
pub mod verify;

use std::fmt;

/// Errors surfaced by the engine. Internal consistency violations panic
/// instead: they signal bugs, not conditions a caller can handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Field tower parameters rejected (p not an odd prime, k = 0, ...).
    BadField(String),
    /// Requested object exceeds the configured size budget.
    TooLarge(String),
    /// No η with φ₀(η) = 1 outside F_q (cannot happen for valid towers).
    NoEta,
    DivisionByZero,
    /// Transversal requested for the zero scalar.
    ZeroScalar,
    /// Parameter of a one-parameter subgroup over F_q was not in F_q.
    NotInFq,
    /// Matrix fails the membership predicate of the Sylow subgroup.
    NotInU(String),
    /// Matrix fails the membership predicate of the intermediate group.
    NotInG(String),
    /// φ₀ or a trace landed outside the expected subfield.
    NotInSubfield,
    IndexOutOfRange,
    /// Cyclotomic integer is not rational.
    NotRational,
    /// An asserted-integral division left a remainder.
    NonIntegralDivision,
    /// Enumeration or orbit search exceeded its budget.
    BudgetExceeded(String),
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadField(m) => write!(f, "bad field parameters: {m}"),
            Error::TooLarge(m) => write!(f, "too large: {m}"),
            Error::NoEta => write!(f, "no eta with phi0(eta) = 1 outside F_q"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroScalar => write!(f, "transversal of the zero scalar"),
            Error::NotInFq => write!(f, "parameter must lie in F_q"),
            Error::NotInU(m) => write!(f, "matrix is not in the Sylow subgroup: {m}"),
            Error::NotInG(m) => write!(f, "matrix is not in the intermediate group: {m}"),
            Error::NotInSubfield => write!(f, "value is not in the expected subfield"),
            Error::IndexOutOfRange => write!(f, "index out of range"),
            Error::NotRational => write!(f, "cyclotomic integer is not rational"),
            Error::NonIntegralDivision => write!(f, "division is not integral"),
            Error::BudgetExceeded(m) => write!(f, "budget exceeded: {m}"),
            Error::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
