use core::fmt;

use crate::surface::Surface;

/// Errors raised by the lattice, bundle, classification and oracle layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Hirzebruch index or Del Pezzo degree outside the supported domain.
    InvalidSurface { reason: &'static str },
    /// Two classes (or a class and a bundle) live on different surfaces.
    SurfaceMismatch { left: Surface, right: Surface },
    /// A coefficient vector does not match the Picard rank.
    RankMismatch { expected: usize, found: usize },
    /// `D^2 + D.K` came out odd, which no genuine divisor class can do.
    ParityViolation { value: i64 },
    /// A bundle descriptor with impossible data, such as a negative `deg Z`.
    Malformed { reason: &'static str },
    /// A bundle shape that only exists on the projective plane was used elsewhere.
    TangentOffPlane { surface: Surface },
    /// A classification query beyond the proven range.
    UnsupportedRange {
        constraint: &'static str,
        requested: i64,
        limit: i64,
    },
    /// A constraint kind that has no meaning for the surface, such as `max_c1` off `P²`.
    UnsupportedConstraint {
        constraint: &'static str,
        surface: Surface,
    },
    /// A family was expanded outside its parameter constraint.
    FamilyRange { t: i64, min: i64, max: Option<i64> },
    /// A list identifier that names no classified list.
    UnknownList,
    /// The brute-force search has no finite candidate space for this target.
    NoOracle {
        target: &'static str,
        surface: Surface,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSurface { reason } => write!(f, "invalid surface: {reason}"),
            Error::SurfaceMismatch { left, right } => {
                write!(f, "surface mismatch: {left} vs {right}")
            }
            Error::RankMismatch { expected, found } => {
                write!(f, "expected {expected} coefficients, found {found}")
            }
            Error::ParityViolation { value } => {
                write!(f, "adjunction parity violated: D^2 + D.K = {value} is odd")
            }
            Error::Malformed { reason } => write!(f, "malformed bundle: {reason}"),
            Error::TangentOffPlane { surface } => {
                write!(f, "tangent bundle shapes only exist on p2, not {surface}")
            }
            Error::UnsupportedRange {
                constraint,
                requested,
                limit,
            } => write!(
                f,
                "unsupported range: {constraint} = {requested} exceeds the classified range (at most {limit})"
            ),
            Error::UnsupportedConstraint {
                constraint,
                surface,
            } => write!(f, "constraint {constraint} is not available on {surface}"),
            Error::FamilyRange { t, min, max } => match max {
                Some(max) => write!(f, "parameter t = {t} outside [{min}, {max}]"),
                None => write!(f, "parameter t = {t} below the family minimum {min}"),
            },
            Error::UnknownList => write!(f, "unknown list identifier"),
            Error::NoOracle { target, surface } => {
                write!(f, "no bounded candidate search for {target} on {surface}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
