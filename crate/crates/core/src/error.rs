use thiserror::Error;

/// Input and construction errors. Mathematical findings (failed axioms,
/// violated claims) are never errors; they travel in reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar literal `{0}`")]
    InvalidScalar(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown {kind} `{label}`")]
    UnknownLabel { kind: &'static str, label: String },
    #[error("duplicate {kind} `{label}`")]
    Duplicate { kind: &'static str, label: String },
    #[error("conflicting composition for ({0}, {1})")]
    ConflictingComposition(String, String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("algebra has no unit")]
    MissingUnit,
    #[error("costructure has no antipode")]
    MissingAntipode,
    #[error("action table has no entry for ({morphism}, {basis})")]
    MissingActionEntry { morphism: String, basis: String },
    #[error("operands come from different constructions: {0}")]
    MismatchedParents(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("unknown builtin instance `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed instance: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
