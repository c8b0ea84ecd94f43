use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{0} is not an element of P")]
    NotInP(String),
    #[error("grade of the zero element is undefined")]
    ZeroGrade,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("config error at `{path}`: {msg}")]
    Config { path: String, msg: String },
    #[error("not composable: {0}")]
    Composability(String),
    #[error("undefined outside pΣ: {0}")]
    UndefinedOutside(String),
    #[error("io: {0}")]
    Io(String),
    #[error("dossier: {0}")]
    Dossier(String),
}

pub type Result<T> = std::result::Result<T, Error>;
