use thiserror::Error;

use crate::classes::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lcp of an empty set is undefined")]
    EmptyLcpSet,

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("invalid token `{0}`: {1}")]
    InvalidToken(String, &'static str),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("state `{state}` has no transition on `{symbol}`")]
    NotTotal { state: String, symbol: String },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("exact decision requires a machine-backed function")]
    ExactUnsupported,

    #[error("function is not in the class: {0}")]
    NotInClass(Box<Witness>),

    #[error(
        "no canonical machine: the start state carries initial output `{prefix}` that a \
         revisited start tuple cannot reproduce (witness `{revisit}`)"
    )]
    InitialOutputConflict { prefix: String, revisit: String },

    #[error("state `{0}` has no structured tuple name")]
    ShapeUnverifiable(String),

    #[error("tier search over {0} symbols exceeds the limit of 16")]
    SearchTooLarge(usize),

    #[error("segment `{0}` has no class")]
    UnmappedSegment(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyLcpSet => "EmptyLcpSet",
            Error::UnknownSymbol(_) => "UnknownSymbol",
            Error::InvalidToken(..) => "InvalidToken",
            Error::Syntax { .. } => "Syntax",
            Error::NotTotal { .. } => "NotTotal",
            Error::AlphabetMismatch(_) => "AlphabetMismatch",
            Error::ExactUnsupported => "ExactUnsupported",
            Error::NotInClass(_) => "NotInClass",
            Error::InitialOutputConflict { .. } => "InitialOutputConflict",
            Error::ShapeUnverifiable(_) => "ShapeUnverifiable",
            Error::SearchTooLarge(_) => "SearchTooLarge",
            Error::UnmappedSegment(_) => "UnmappedSegment",
            Error::InvalidParams(_) => "InvalidParams",
        }
    }
}
