use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::radicals::ObstructionReport;

/// Errors reported by the obstruction calculus.
///
/// A nonzero obstruction is *not* an error in itself — operations that merely
/// compute obstructions return reports.  `Obstructed` is raised only by
/// operations whose contract requires a vanishing obstruction (for example
/// adjoining a root that does not exist).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix or coordinate vector had the wrong shape.
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    /// Torsion coefficients that do not form a divisibility chain of
    /// integers ≥ 2 were passed where canonical invariant factors are
    /// required.
    InvalidInvariantFactors(String),
    /// A would-be homomorphism does not kill the relations of its source.
    NotWellDefined(String),
    /// Two groups that must agree (up to canonical form) do not.
    GroupMismatch(String),
    /// A cocycle table violates normalization, symmetry, or the cocycle
    /// identity, or is indexed inconsistently with its base group.
    InvalidCocycle(String),
    /// A cocycle table was requested over an infinite base.  Only the free
    /// cyclic base with the split (zero) cocycle is supported there.
    InfiniteBase(String),
    /// An operation would have to enumerate an infinite group.
    InfiniteEnumeration(String),
    /// A mapping-group degree outside the supported range 0..=3.
    UnsupportedDegree(u8),
    /// An element required to be 2-torsion is not.
    NotTwoTorsion(String),
    /// A unit was requested that does not factor over the model's primes.
    NotSUnit(String),
    /// A model violates its structural invariants.
    InvalidModel(String),
    /// The strict-unit obstruction of the given element is nonzero.
    NotStrictUnit(String),
    /// A root adjunction (or similar construction) was refused because its
    /// obstruction class is nonzero.  The report carries the class.
    Obstructed(Box<ObstructionReport>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::InvalidInvariantFactors(msg) => {
                write!(f, "invalid invariant factors: {msg}")
            }
            Error::NotWellDefined(msg) => write!(f, "not a well-defined homomorphism: {msg}"),
            Error::GroupMismatch(msg) => write!(f, "group mismatch: {msg}"),
            Error::InvalidCocycle(msg) => write!(f, "invalid cocycle: {msg}"),
            Error::InfiniteBase(msg) => write!(f, "infinite base: {msg}"),
            Error::InfiniteEnumeration(msg) => write!(f, "infinite enumeration: {msg}"),
            Error::UnsupportedDegree(k) => write!(f, "unsupported mapping degree k = {k}"),
            Error::NotTwoTorsion(msg) => write!(f, "not 2-torsion: {msg}"),
            Error::NotSUnit(msg) => write!(f, "not a unit over the model primes: {msg}"),
            Error::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
            Error::NotStrictUnit(msg) => write!(f, "not a strict unit: {msg}"),
            Error::Obstructed(report) => {
                write!(f, "obstructed: nonzero class {}", report.obstruction)
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
