use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: String, size: u64, cap: u64 },

    #[error("isolated vertex {0}")]
    IsolatedVertex(usize),

    #[error("illegal move {from}->{to} x{count}: {reason}")]
    IllegalMove {
        from: usize,
        to: usize,
        count: u32,
        reason: String,
    },

    #[error("wrong phase: expected {expected}, found {found}")]
    WrongPhase { expected: String, found: String },

    /// Carries a Hall violator: left nodes whose neighbourhood is too small.
    #[error("no cover exists; Hall violator {violator:?}")]
    NoCover { violator: Vec<usize> },

    #[error("local game infeasible at {vertex}: {reason}")]
    LocalGameInfeasible { vertex: usize, reason: String },

    #[error("stabilization failed after {attempts} attempts")]
    StabilizationFailed { attempts: usize },

    #[error("greedy migration target infeasible: {0}")]
    TargetInfeasible(String),

    #[error("case selection failed: {0}")]
    CaseSelectionFailed(String),

    #[error("closed forms disagree: {0}")]
    InconsistentClosedForms(String),

    #[error("no avoiding vertex found")]
    AvoidingVertexNotFound,

    #[error("graph is not complete multipartite")]
    NotMultipartite,

    #[error("parts are not r-large: {0}")]
    NotRLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("strategy {id} does not apply: {reason}")]
    StrategyMismatch { id: String, reason: String },

    #[error("unknown strategy {0}")]
    UnknownStrategy(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Short machine-readable code used on the wire.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::Parse { .. } => "parse_error",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::IsolatedVertex(_) => "isolated_vertex",
            Error::IllegalMove { .. } => "illegal_move",
            Error::WrongPhase { .. } => "wrong_phase",
            Error::NoCover { .. } => "no_cover",
            Error::LocalGameInfeasible { .. } => "local_game_infeasible",
            Error::StabilizationFailed { .. } => "stabilization_failed",
            Error::TargetInfeasible(_) => "target_infeasible",
            Error::CaseSelectionFailed(_) => "case_selection_failed",
            Error::InconsistentClosedForms(_) => "inconsistent_closed_forms",
            Error::AvoidingVertexNotFound => "avoiding_vertex_not_found",
            Error::NotMultipartite => "not_multipartite",
            Error::NotRLarge(_) => "not_r_large",
            Error::Precondition(_) => "precondition",
            Error::StrategyMismatch { .. } => "strategy_mismatch",
            Error::UnknownStrategy(_) => "unknown_strategy",
            Error::Io(_) => "io",
        }
    }
}
