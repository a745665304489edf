use thiserror::Error;

use crate::grading::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element has {found} coordinates, group has rank {expected}")]
    ElementShape { expected: usize, found: usize },

    #[error("{0} is not an element of order 2")]
    NotAnInvolution(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("size mismatch: UJ_{left} vs UJ_{right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matrix is singular or not upper triangular")]
    Singular,

    #[error("sequence has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("not a grading: {0}")]
    NotAGrading(Violation),

    #[error("{0}")]
    NotAnIdeal(String),

    #[error("subspace is not graded: {0}")]
    NotGraded(String),

    #[error("sequence {0} is not a palindrome")]
    NotPalindromic(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("labels are not isomorphic")]
    NotIsomorphic,

    #[error("labels are isomorphic, no separating identity exists")]
    LabelsIsomorphic,

    #[error("no separating identity found: {0}")]
    NoSeparator(String),

    #[error("variable {0} has no assigned value")]
    MissingAssignment(String),

    #[error("value for {var} is not homogeneous of degree {degree}")]
    DegreeMismatch { var: String, degree: String },

    #[error("unsupported term shape: {0}")]
    UnsupportedTerm(String),

    #[error("identity check too large: {0} substitutions")]
    TooExpensive(u128),

    #[error("normalization failed: {0}")]
    Normalize(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGroup(_) => "E-GROUP",
            Error::ElementShape { .. } => "E-ELEMENT",
            Error::NotAnInvolution(_) => "E-INVOLUTION",
            Error::InvalidHom(_) => "E-HOM",
            Error::SizeMismatch { .. } => "E-SIZE",
            Error::IndexOutOfRange(_) => "E-INDEX",
            Error::Singular => "E-SINGULAR",
            Error::LengthMismatch { .. } => "E-LENGTH",
            Error::NotAGrading(v) => v.code(),
            Error::NotAnIdeal(_) => "E-IDEAL",
            Error::NotGraded(_) => "E-NOT-GRADED",
            Error::NotPalindromic(_) => "E-PALINDROME",
            Error::InvalidLabel(_) => "E-LABEL",
            Error::NotIsomorphic => "E-NOT-ISOMORPHIC",
            Error::LabelsIsomorphic => "E-ISOMORPHIC",
            Error::NoSeparator(_) => "E-NO-SEPARATOR",
            Error::MissingAssignment(_) => "E-ASSIGNMENT",
            Error::DegreeMismatch { .. } => "E-DEGREE",
            Error::UnsupportedTerm(_) => "E-TERM",
            Error::TooExpensive(_) => "E-BUDGET",
            Error::Normalize(_) => "E-NORMALIZE",
            Error::Parse(_) => "E-PARSE",
        }
    }

    /// Malformed input text, as opposed to well-formed input that fails a check.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::InvalidGroup(_) | Error::ElementShape { .. } | Error::IndexOutOfRange(_)
        )
    }
}
