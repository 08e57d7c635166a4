use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("m = {m} and n = {n} are not coprime")]
    NotCoprime { m: i64, n: i64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("nonzero remainder when dividing by {0}")]
    NonzeroRemainder(String),
    #[error("truncation window of size {n} is not stable: x1^{a} x2^{b} leaves it")]
    WindowInstability { n: usize, a: i64, b: i64 },
    #[error("element does not lie in h^h")]
    NotCartanWedge,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("span is not closed under the bracket")]
    NotLieSubalgebra,
    #[error("r does not lie in f (x) f for the given subalgebra")]
    NotInSubalgebra,
    #[error("r-check is singular on the carrier")]
    SingularRCheck,
    #[error("representations of {0} disagree")]
    RepresentationMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable snake_case tag for machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::NotCoprime { .. } => "not_coprime",
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::NonzeroRemainder(_) => "nonzero_remainder",
            Error::WindowInstability { .. } => "window_instability",
            Error::NotCartanWedge => "not_cartan_wedge",
            Error::NotNilpotent => "not_nilpotent",
            Error::NotLieSubalgebra => "not_lie_subalgebra",
            Error::NotInSubalgebra => "not_in_subalgebra",
            Error::SingularRCheck => "singular_r_check",
            Error::RepresentationMismatch(_) => "representation_mismatch",
            Error::Parse(_) => "parse",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
