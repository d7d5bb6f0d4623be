use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} is not in {algebra}")]
    NotInSubalgebra { what: String, algebra: &'static str },

    #[error("exponents must be positive in a Steenrod word")]
    ZeroExponent,

    #[error("sequence {0:?} is not admissible")]
    NotAdmissible(Vec<u16>),

    #[error("expected a homogeneous element, got `{0}`")]
    Inhomogeneous(String),

    #[error("relation references unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator name `{0}` is used twice")]
    DuplicateGenerator(String),

    #[error("relation terms have different degrees ({0} and {1})")]
    InhomogeneousRelation(usize, usize),

    #[error("negative coefficient in degree {degree} ({value})")]
    NegativeCoefficient { degree: usize, value: i64 },

    #[error("series division is not exact in degree {degree}")]
    InexactDivision { degree: usize },

    #[error("degree {requested} exceeds the supported bound {limit}")]
    DegreeTooLarge { requested: usize, limit: usize },

    #[error("variable bound {have} is too small; need at least {needed}")]
    VariableBoundTooSmall { needed: usize, have: usize },

    #[error("element lives in the wrong ambient algebra: {0}")]
    WrongAmbient(String),

    #[error("realization is truncated at degree {max}, degree {requested} was requested")]
    Truncated { requested: usize, max: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
