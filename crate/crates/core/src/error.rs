use thiserror::Error;

use crate::polytope::Violation;

/// Errors raised anywhere in the border basis pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("cannot mix scalars from {left} and {right}")]
    FieldMismatch { left: String, right: String },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("set is not an order ideal: {0} is missing a divisor")]
    NotOrderIdeal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial of degree {degree} exceeds the universe bound {bound}")]
    DegreeExceedsUniverse { degree: u32, bound: u32 },

    #[error("monomial {0} is outside the universe")]
    NotInUniverse(String),

    #[error("ideal not detected zero-dimensional within degree cap {cap}")]
    NotZeroDimensional { cap: u32 },

    #[error("order ideal is not admissible: {0}")]
    Inadmissible(Box<Violation>),

    #[error("generators are not stabilized in the degree-{0} universe")]
    NotStabilized(u32),

    #[error("degree-{0} monomials are not all leading terms")]
    MissingTopDegree(u32),

    #[error("cardinality mismatch: |L| - |M| = {found}, expected {expected}")]
    CardinalityMismatch { expected: usize, found: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
