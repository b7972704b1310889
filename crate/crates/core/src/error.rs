use alloc::string::String;

/// Errors raised by the model, construction and search routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("move of type {k} is illegal on a configuration with {total} balls")]
    MoveTooLarge { k: u64, total: u64 },
    #[error("cannot project onto {n} balls: configuration holds only {total}")]
    ProjectionTooLarge { n: u64, total: u64 },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid coupling parameters k={k}, l={l}: {reason}")]
    InvalidParams { k: u64, l: u64, reason: &'static str },
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: u64, bound: u64 },
    #[error("universe of {l}-configurations exceeds the enumeration cap (l <= {cap})")]
    UniverseTooLarge { l: u64, cap: u64 },
    #[error("letter {letter} exceeds the number of balls l={l}")]
    LetterTooLarge { letter: u64, l: u64 },
    #[error("subset search exceeded its budget of {budget} subsets")]
    SubsetSpaceTooLarge { budget: usize },
    #[error("automaton is not synchronizable over the given alphabet")]
    NotSynchronizable,
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
