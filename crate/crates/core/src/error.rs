use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("empty vertex set")]
    EmptyVertexSet,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("card size {k} outside 1..={n}")]
    CardSize { k: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("{what} is limited to n <= {limit} (got {n})")]
    CostGuard {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("inconsistent deck: {0}")]
    InconsistentDeck(String),

    #[error("decks do not match: {0}")]
    DeckMismatch(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("outside formula domain: {0}")]
    Domain(String),

    #[error("malformed deck file: {0}")]
    DeckFormat(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
