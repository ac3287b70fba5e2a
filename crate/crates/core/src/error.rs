use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a non-empty word")]
    EmptyWord,

    #[error("operation requires a non-empty pattern")]
    EmptyPattern,

    /// A computation would exceed one of the configured caps.
    #[error("{what} exceeds the configured cap ({value} > {limit})")]
    Resource {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("counter index {index} is out of range for order {order}")]
    CounterOutOfRange { order: u32, index: String },

    #[error("malformed order-{order} counter at position {position}: {reason}")]
    MalformedCounter {
        order: u32,
        position: usize,
        reason: String,
    },

    #[error("invalid regular expression at byte {position}: {reason}")]
    Regex { position: usize, reason: String },

    #[error("automata have different alphabets")]
    AlphabetMismatch,

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),

    #[error("cannot parse {kind} from {input:?}: {reason}")]
    Syntax {
        kind: &'static str,
        input: String,
        reason: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("offset {offset} is not an occurrence of the parse")]
    InvalidOccurrence { offset: usize },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

impl Error {
    pub(crate) fn resource(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        Error::Resource {
            what,
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn syntax(kind: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Syntax {
            kind,
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by a cap or budget rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
