use std::fmt;

use thiserror::Error;

/// Structural defects found while validating a PD code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    /// An arc label occurs more than twice.
    DuplicateArc,
    /// An arc label occurs once, or a label in `1..=arc_count` is missing.
    OpenStrand,
    /// A stored crossing sign disagrees with the traced orientation.
    SignMismatch,
    /// Tracing enters an under-strand at position 2 or leaves an arc from both ends.
    InconsistentOrientation,
    /// The rotation system does not describe a connected planar diagram.
    NonPlanar,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InvalidReason::DuplicateArc => "DUPLICATE_ARC",
            InvalidReason::OpenStrand => "OPEN_STRAND",
            InvalidReason::SignMismatch => "SIGN_MISMATCH",
            InvalidReason::InconsistentOrientation => "INCONSISTENT_ORIENTATION",
            InvalidReason::NonPlanar => "NON_PLANAR",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("invalid diagram ({reason}): {detail}")]
    InvalidDiagram {
        reason: InvalidReason,
        detail: String,
    },

    #[error("not a knot: diagram has {components} components")]
    NotAKnot { components: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("cannot evaluate a polynomial with negative exponents at 0")]
    EvalAtZero,

    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("malformed recipe: {0}")]
    MalformedRecipe(String),

    #[error("recipe ends do not match on {field}: {left} vs {right}")]
    EndMismatch {
        field: &'static str,
        left: String,
        right: String,
    },

    #[error("recipe is not a concordance (genus {genus})")]
    NotAConcordance { genus: i64 },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(reason: InvalidReason, detail: impl Into<String>) -> Self {
        Error::InvalidDiagram {
            reason,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
