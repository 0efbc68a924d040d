use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// How a failure should be reported to a caller. `Verdict` is a negative
/// answer about valid input. `Internal` marks a broken invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Verdict,
    Input,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("contact requires odd dimension, got {0}")]
    EvenDimension(usize),

    #[error("antisymmetry violated: bracket [e{i}, e{j}] must be stored with i < j or vanish for i = j")]
    Antisymmetry { i: usize, j: usize },

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("{0}")]
    Input(String),

    #[error("no unique Reeb field: the form is not contact (η∧(dη)^n = 0)")]
    NoUniqueReeb,

    #[error("ad(ξ) is not diagonalizable: the root decomposition hypothesis fails (minimal polynomial {0})")]
    NotDiagonalizable(String),

    #[error("Reeb field not central; quotient undefined")]
    ReebNotCentral,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NoUniqueReeb | Error::NotDiagonalizable(_) | Error::ReebNotCentral => {
                ErrorClass::Verdict
            }
            Error::Invariant(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::EvenDimension(_) => "even_dimension",
            Error::Antisymmetry { .. } => "antisymmetry",
            Error::Jacobi(..) => "jacobi",
            Error::Parse { .. } => "parse",
            Error::Input(_) => "input",
            Error::NoUniqueReeb => "no_unique_reeb",
            Error::NotDiagonalizable(_) => "not_diagonalizable",
            Error::ReebNotCentral => "reeb_not_central",
            Error::Invariant(_) => "internal_invariant",
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
