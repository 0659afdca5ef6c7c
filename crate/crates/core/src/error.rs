use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{field}` must be strictly positive, got {value}")]
    NonPositiveParameter { field: &'static str, value: f64 },

    #[error("parameter `{field}` must be finite, got {value}")]
    NonFiniteParameter { field: &'static str, value: f64 },

    #[error("cost `{field}` must be non-negative, got {value}")]
    NegativeCost { field: &'static str, value: f64 },

    #[error("embedded chain is reducible or the stationary system is singular")]
    ReducibleChain,

    #[error("cycle-length recursion is not uniquely solvable")]
    SingularRecursion,

    #[error("invalid simulation config: {0}")]
    Config(String),

    #[error("replication {replication} completed only {observed} cycles, need at least {required}")]
    InsufficientCycles {
        replication: usize,
        observed: u64,
        required: u64,
    },

    #[error("target difference does not change sign on [{start}, {stop}]")]
    NoSignChange { start: f64, stop: f64 },

    #[error("missing required parameter `{0}`")]
    MissingParameter(&'static str),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
