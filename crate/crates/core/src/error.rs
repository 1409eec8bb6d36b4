use crate::ratlinalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("invalid space: {0}")]
    InvalidSpec(String),
    #[error("form mismatch: {0}")]
    FormMismatch(String),
    #[error("degree overflow: {0}")]
    DegreeOverflow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("form is not closed")]
    NotClosed,
    #[error("form has nonzero mean {0}")]
    NonzeroMean(String),
    #[error("no potential exists in the target space")]
    PotentialNotFound,
    #[error("image not contained in target space: {0}")]
    Inclusion(String),
    #[error("no closed form for {0}")]
    NoClosedForm(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid mesh: {0}")]
    Mesh(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
