use thiserror::Error;

use crate::dyck::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("({a}, {b}) is not a pair of coprime positive integers")]
    NotCoprime { a: u32, b: u32 },
    #[error("pair ({a}, {b}) has equal entries")]
    EqualEntries { a: u32, b: u32 },
    #[error("operation requires a < b, got ({a}, {b})")]
    RequiresAscending { a: u32, b: u32 },
    #[error("{what} = {value} outside the range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("invalid run type vector: {0}")]
    InvalidRunType(String),
    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    #[error("expected {expected_north} N and {expected_east} E steps, found {north} N and {east} E")]
    WrongStepCounts {
        expected_north: u32,
        expected_east: u32,
        north: u32,
        east: u32,
    },
    #[error("unrecognised step symbol {0:?}")]
    BadStepSymbol(char),
    #[error("path touches or crosses the diagonal at {0}")]
    BelowDiagonal(Point),
    #[error("invalid partition for this pair: {0}")]
    InvalidPartition(String),
    #[error("invalid run word: {0}")]
    InvalidRunWord(String),
    #[error("{0} is not the bottom of a non-initial north step")]
    NotALaserSource(Point),
    #[error("laser from {0} does not terminate inside an east step")]
    InternalGeometry(Point),
    #[error("{0}")]
    Internal(String),

    #[error("not a diagonal: {0}")]
    InvalidDiagonal(String),
    #[error("facet family is nonempty but the vertex set is empty")]
    EmptyGroundSet,
    #[error("face uses a vertex outside the ground set")]
    UnknownVertex,
    #[error("complex is not pure")]
    NotPure,
    #[error("shelling order is not a permutation of the facets")]
    NotAFacetOrder,
    #[error("facet {0} of the order has more than one minimal new face")]
    MultipleMinimalNewFaces(usize),
    #[error("facet {0} of the order adds no new face")]
    NoNewFace(usize),
    #[error("facet too large for shelling verification ({0} vertices)")]
    FacetTooLarge(usize),
    #[error("collapse target is not a subcomplex")]
    NotASubcomplex,

    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),
    #[error("set partition is not noncrossing")]
    Crossing,

    #[error("identity check failed: {0}")]
    IdentityMismatch(String),
}
