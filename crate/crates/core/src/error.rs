use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),
    #[error("distribution is not normalized: {0}")]
    NotNormalized(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` is a loop and cannot be collapsed")]
    LoopCollapse(String),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("vertex marginals disagree at `{0}`")]
    Inconsistent(String),
    #[error("outcome arity mismatch: expected d = {expected}, got {got}")]
    WrongOutcomeArity { expected: usize, got: usize },
    #[error("operation requires the {expected} semiring")]
    WrongSemiring { expected: &'static str },
    #[error("PR box needs an odd number of minus edges, got {0}")]
    EvenMinusCount(usize),
    #[error("edges do not compose: {0}")]
    NotComposable(String),
    #[error("marginals do not agree on the shared component")]
    MarginMismatch,
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("edge `{0}` has off-diagonal support and cannot be collapsed")]
    NotCollapsible(String),
    #[error("scenario is not connected")]
    NotConnected,
    #[error("vertex distribution is not invariant under the subgroup {0:?}")]
    NotInvariant(Vec<u32>),
    #[error("labeling is null-homotopic")]
    NullHomotopicInput,
    #[error("d = {0} is not prime")]
    NonPrimeD(u32),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status: 2 for malformed input, 4 when a size cap is
    /// exceeded, 3 for every other refusal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::TooLarge(_) => 4,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidScalar(_) => "invalid_scalar",
            Error::NotNormalized(_) => "not_normalized",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownEdge(_) => "unknown_edge",
            Error::DuplicateId(_) => "duplicate_id",
            Error::LoopCollapse(_) => "loop_collapse",
            Error::InvalidWalk(_) => "invalid_walk",
            Error::Inconsistent(_) => "inconsistent",
            Error::WrongOutcomeArity { .. } => "wrong_outcome_arity",
            Error::WrongSemiring { .. } => "wrong_semiring",
            Error::EvenMinusCount(_) => "even_minus_count",
            Error::NotComposable(_) => "not_composable",
            Error::MarginMismatch => "margin_mismatch",
            Error::NotASubcomplex(_) => "not_a_subcomplex",
            Error::NotCollapsible(_) => "not_collapsible",
            Error::NotConnected => "not_connected",
            Error::NotInvariant(_) => "not_invariant",
            Error::NullHomotopicInput => "null_homotopic_input",
            Error::NonPrimeD(_) => "non_prime_d",
            Error::TooLarge(_) => "too_large",
            Error::InvalidParams(_) => "invalid_params",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
