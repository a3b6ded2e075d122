//! Error values shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// Everything user-facing is `Result`-based; panics are reserved for broken
/// internal invariants (e.g. a decision procedure disagreeing with the
/// exhaustive oracle it is cross-checked against).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text that does not match the word/term/table grammar.
    /// `offset` is the byte position in the input where scanning failed.
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },

    /// Structurally well-formed input with out-of-range or inconsistent data
    /// (element outside 1..=n, wrong table dimensions, unknown model name…).
    #[error("domain error: {0}")]
    Domain(String),

    /// A semigroup/involution axiom fails; the message carries a witness.
    #[error("axiom violation: {law} (witness: {witness})")]
    Axiom { law: &'static str, witness: String },

    /// The request is valid but exceeds a configured bound
    /// (variable cap, supported order, missing opt-in flag…).
    #[error("capability error: {0}")]
    Capability(String),

    /// A rewrite step that does not apply where claimed.
    #[error("rule application error: {0}")]
    Rule(String),

    /// Underlying I/O failure (census cache files).
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(offset: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
