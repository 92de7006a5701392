//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by validation, evaluation and conversion routines.
///
/// Witness-carrying variants keep the offending data as formatted text so
/// that reports can surface it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty shift: every point is excluded ({0})")]
    EmptyShift(String),

    #[error("shift space has isolated points: {0}")]
    IsolatedPoints(String),

    #[error("unknown or unusable symbol: {0}")]
    BadSymbol(String),

    #[error("point is undetermined at depth {depth}: {context}")]
    Undetermined { depth: usize, context: String },

    #[error("depth {requested} unsupported (max {max}): {context}")]
    DepthUnsupported {
        requested: usize,
        max: usize,
        context: String,
    },

    #[error("domain/codomain mismatch: {0}")]
    DomainMismatch(String),

    #[error("table incomplete: missing entry for {0}")]
    TableIncomplete(String),

    #[error("action is not by homeomorphisms: {0}")]
    NotHomeomorphisms(String),

    #[error("elements are not composable: {0}")]
    NotComposable(String),

    #[error("points are not orbit related: {0}")]
    NotRelated(String),

    #[error("point lies outside the bisection source set: {0}")]
    NotInV(String),

    #[error("inversion failed: {0}")]
    InversionFailed(String),

    #[error("roundtrip failed: {0}")]
    RoundtripFailed(String),

    #[error("no related extension found for tabulated pair: {0}")]
    NoRelatedExtension(String),

    #[error("cocycle value is not well defined: {0}")]
    WellDefinednessFailed(String),

    #[error("cocycle law violated: {0}")]
    CocycleLawFailed(String),

    #[error("isomorphism does not preserve units: {0}")]
    UnitsNotPreserved(String),

    #[error("bisection cover misses a related pair: {0}")]
    CoverIncomplete(String),

    #[error("bisection data cannot be put in cylinder form: {0}")]
    NotBisectionForm(String),

    #[error("operation requires rank-1 shift actions: {0}")]
    NotRankOne(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid document: {0}")]
    BadDocument(String),

    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),

    #[error("duplicate name in workspace: {0}")]
    DuplicateName(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
