use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("body is not convex: {0}")]
    NonConvex(String),
    #[error("empty level set at t = {0}")]
    EmptyLevelSet(f64),
    #[error("level set at t = {t} has {components} components")]
    DisconnectedLevelSet { t: f64, components: usize },
    #[error("field is not admissible: {0}")]
    Inadmissible(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("{context}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn solver(msg: impl Into<String>) -> Self {
        Error::Solver(msg.into())
    }
}
