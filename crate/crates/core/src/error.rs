use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Instance or matrix text failed to parse. Positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Two exact values from different fields (or different primes) met.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// Matrix or index dimensions disagree.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A rank precondition failed (e.g. a representative-family input whose
    /// matrix rank is below the promised value).
    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    /// Planarity was required but the graph is not planar.
    #[error("not planar: {0}")]
    NotPlanar(String),

    /// No certified rank-preserving truncation could be constructed.
    #[error("truncation defect: {0}")]
    TruncationDefect(String),

    /// An instance violates a structural invariant (terminals equal, ids out
    /// of range, matroid ground set differs from the vertex set, ...).
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A derived constant exceeded the 128-bit budget.
    #[error("constant overflow: {0}")]
    ConstantOverflow(String),

    /// The operation is outside this implementation's documented envelope.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A subroutine abstained (heuristic miss, oversize input); the caller
    /// reports this honestly instead of guessing.
    #[error("incomplete: {0}")]
    Incomplete(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
