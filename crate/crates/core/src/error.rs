use thiserror::Error;

/// Position-carrying failure from the formula or clause reader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("modal formula in forgetting argument: {0}")]
    ModalArgument(String),

    #[error("invalid atom name {0:?}")]
    InvalidAtom(String),

    #[error("tautological clause {0} is not allowed here")]
    TautologicalClause(String),

    #[error("truth table over {atoms} atoms exceeds the cap of {cap}")]
    AtomCap { atoms: usize, cap: usize },

    #[error("{what}: {requested} exceeds the cap of {cap}")]
    Cap {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("unknown world {0:?}")]
    UnknownWorld(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unsupported formula node: {0}")]
    Unsupported(String),

    #[error("product update has no surviving worlds")]
    EmptyProduct,

    #[error("invalid forgetting function pair: {0}")]
    InvalidFunctionPair(String),

    #[error("dependent forgetting needs a contingent argument, got {0} (no forgetting functions exist)")]
    NonContingent(String),

    #[error("invalid search spec: {0}")]
    InvalidSearch(String),
}

impl Error {
    /// True for every error that comes from a configurable size or enumeration bound.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::AtomCap { .. } | Error::Cap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
