use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: the CLI
/// reports them with exit code 1 and the [`Error::kind`] string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("variable index {index} exceeds the ambient dimension {n}")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("malformed rational: {0}")]
    MalformedRational(String),

    #[error("expected a polynomial in the {expected} convention")]
    WrongConvention { expected: &'static str },

    #[error("variable family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("ambient ring mismatch: {0}")]
    RingMismatch(String),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("linear form is identically zero")]
    ZeroLinearForm,

    #[error("invalid GAD summand {index}: {reason}")]
    InvalidGad { index: usize, reason: String },

    #[error("ideal does not define a 0-dimensional scheme")]
    NotZeroDimensional,

    #[error("Hilbert function did not stabilize below degree {0}")]
    DegreeLimit(u32),

    #[error("scheme is not apolar to the given form")]
    NotApolar,

    #[error("candidate {0} does not define a subscheme")]
    NotSubscheme(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::VariableOutOfRange { .. } => "variable_out_of_range",
            Error::MalformedRational(_) => "malformed_rational",
            Error::WrongConvention { .. } => "wrong_convention",
            Error::FamilyMismatch(_) => "family_mismatch",
            Error::RingMismatch(_) => "ring_mismatch",
            Error::NotHomogeneous => "not_homogeneous",
            Error::ZeroLinearForm => "zero_linear_form",
            Error::InvalidGad { .. } => "invalid_gad",
            Error::NotZeroDimensional => "not_zero_dimensional",
            Error::DegreeLimit(_) => "degree_limit",
            Error::NotApolar => "not_apolar",
            Error::NotSubscheme(_) => "not_subscheme",
            Error::Precondition(_) => "precondition",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::UnknownFixture(_) => "unknown_fixture",
            Error::Input(_) => "input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
