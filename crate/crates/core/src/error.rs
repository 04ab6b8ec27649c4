use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidGroup(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("conjugacy class {class} has support larger than k = {k}")]
    ClassSupport { class: String, k: u32 },
    #[error(
        "{what} is not semi-universal (needs {needed}), so these circuits are not even \
         2-designs for the symmetric unitaries; pass the semi-universality override to solve anyway"
    )]
    NotSemiUniversal { what: String, needed: String },
    #[error("no closed form for {0}")]
    NoClosedForm(String),
    #[error("table is not in canonical order: {0}")]
    NotCanonical(String),
    #[error("empty lattice basis")]
    EmptyBasis,
    #[error("internal verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
