use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("non-polynomial class: pole at y = {at}")]
    Pole { at: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("spectrum frame mismatch: expected {expected}, found {found}")]
    FrameMismatch { expected: String, found: String },

    #[error("spectrum for edge {edge} failed validation: {}", failures.join("; "))]
    SpectrumValidation { edge: String, failures: Vec<String> },

    #[error("missing spectrum table for edge {edge}")]
    MissingSpectrum { edge: String },

    #[error("unsupported stratum dimension {dim} for edge {edge}")]
    UnsupportedStratum { edge: String, dim: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("non-polynomial contribution: {0}")]
    NonPolynomial(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::NotInvertible(_) => "not_invertible",
            Error::TruncationMismatch { .. } => "truncation_mismatch",
            Error::Pole { .. } => "pole",
            Error::Parse(_) => "parse",
            Error::InvalidArrangement(_) => "invalid_arrangement",
            Error::FrameMismatch { .. } => "frame_mismatch",
            Error::SpectrumValidation { .. } => "spectrum_validation",
            Error::MissingSpectrum { .. } => "missing_spectrum",
            Error::UnsupportedStratum { .. } => "unsupported_stratum",
            Error::OutOfRange(_) => "out_of_range",
            Error::NonPolynomial(_) => "non_polynomial",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
