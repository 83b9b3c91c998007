//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building or checking product groups.
#[derive(Debug, Error)]
pub enum Error {
    /// A group of order zero was requested.
    #[error("group order must be at least 1")]
    InvalidOrder,

    /// A multiplication or action table has the wrong shape, or an entry is
    /// out of range.
    #[error("malformed table: {0}")]
    MalformedTable(String),

    /// A pair of action tables failed the matched-pair conditions; the report
    /// records the first counterexample for each failed condition.
    #[error("matched-pair conditions failed: {}", .0.failed_ids().join(", "))]
    MatchedPairInvalid(crate::pair::ConditionReport),

    /// Two subgroups of an ambient group do not give an exact factorization
    /// (products repeat or miss elements).
    #[error("not an exact factorization: {0}")]
    NotAFactorization(String),

    /// A map-algebra operation was applied to tables with incompatible
    /// domains or codomains.
    #[error("map algebra type mismatch: {0}")]
    MapType(String),

    /// The product group is not generated by the embedded factor generators,
    /// so the two-generator automorphism search does not apply.
    #[error("group is not generated by the embedded factor generators")]
    NotTwoGenerated,

    /// A brute-force search was requested for a group above the configured
    /// order ceiling.
    #[error("group order {order} exceeds the brute-force ceiling {cap}")]
    ScaleExceeded { order: usize, cap: usize },

    /// A quadruple of maps failed a matrix-membership condition; carries the
    /// first failing condition id and a witness tuple.
    #[error("matrix is not an automorphism matrix: {condition} fails at {witness}")]
    NotAutMatrix { condition: String, witness: String },

    /// Family parameters fail the defining congruences, or an operation that
    /// needs a genuine (non-semidirect) point was given a degenerate one.
    #[error("family parameters rejected: {0}")]
    FamilyParams(String),

    /// The two independent constructions of a family's action tables
    /// (closed forms vs. extension from generator relations) disagree,
    /// or the extension could not be completed.
    #[error("action-table constructions disagree: {0}")]
    FormulaConsistency(String),

    /// An unknown family or claim identifier was requested.
    #[error("unknown identifier: {0}")]
    UnknownId(String),

    /// File or JSON handling problems (CLI only).
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON parse/serialize problems (CLI only).
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
