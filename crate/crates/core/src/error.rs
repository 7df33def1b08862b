use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet needs at least two symbols, got {0}")]
    AlphabetTooSmall(usize),
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("letter {letter} out of range for an alphabet of {size} symbols")]
    LetterOutOfRange { letter: usize, size: usize },
    #[error("the period of an ultimately periodic word must be nonempty")]
    EmptyPeriod,
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("state {state} out of range for an automaton with {states} states")]
    StateOutOfRange { state: usize, states: usize },
    #[error("state budget of {0} states exceeded")]
    BudgetExceeded(usize),
    #[error("operation cancelled")]
    Cancelled,
    #[error("the language is empty")]
    EmptyLanguage,
    #[error("input is not accepted: {0}")]
    NotAccepted(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for the errors a caller should report as "unknown" rather than as a failure.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::Cancelled)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
