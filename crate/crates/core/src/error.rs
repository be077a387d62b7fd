use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("PD syntax error: {0}")]
    Syntax(String),
    #[error("invalid edge labelling: {0}")]
    EdgeLabels(String),
    #[error("diagram has {0} components; only knots are supported")]
    MultiComponent(usize),
    #[error("crossing index {index} out of range for {count} crossings")]
    CrossingIndex { index: usize, count: usize },
    #[error("diagram has {crossings} crossings, over the budget of {budget}")]
    BudgetExceeded { crossings: usize, budget: usize },
    #[error("band index {index} out of range for {count} bands")]
    BandIndex { index: usize, count: usize },
    #[error("not a Seifert matrix: {0}")]
    NotSeifert(String),
    #[error("Seifert matrices differ")]
    MatrixMismatch,
    #[error("invalid front diagram: {0}")]
    InvalidFront(String),
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("missing Thurston-Bennequin data for `{0}`")]
    MissingTb(String),
    #[error("band presentation format error: {0}")]
    BandFormat(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
