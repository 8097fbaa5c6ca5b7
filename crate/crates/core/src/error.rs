use thiserror::Error;

/// Errors surfaced by the verification engine.
///
/// `OracleMismatch` is special: it means two independent computation routes
/// inside one operation disagreed, which is always an implementation bug and
/// is reported with status `fail` (never `paper_mismatch`).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("substitution for generator `{gen}` is not homogeneous of degree {degree}")]
    InhomogeneousSubstitution { gen: String, degree: u32 },

    #[error("no substitution given for generator `{0}`")]
    MissingSubstitution(String),

    #[error("polynomial mentions generators outside the target presentation: {0}")]
    ForeignGenerator(String),

    #[error("presentation needs m >= 8 so that the bundle keeps a trivial summand, got m = {0}")]
    PresentationTooSmall(u32),

    #[error("inconsistent parameters: {0}")]
    BadParameters(String),

    #[error("internal oracle mismatch in {check}: {witness}")]
    OracleMismatch { check: String, witness: String },

    #[error("polynomial is not symmetric in the root variables: {0}")]
    Asymmetric(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
