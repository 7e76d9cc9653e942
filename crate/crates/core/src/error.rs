use thiserror::Error;

use crate::formula::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("agent index {agent} out of range 1..={agents}")]
    AgentOutOfRange { agent: u32, agents: u32 },
    #[error("operation needs at least two agents, got {agents}")]
    TooFewAgents { agents: u32 },
    #[error("Val is not allowed here ({0}); eliminate it first")]
    ValNotAllowed(&'static str),
    #[error("formula is not propositional: {0}")]
    NotPropositional(String),
    #[error("formula is not basic (mentions N or Val): {0}")]
    NotBasic(String),
    #[error("formula mentions agents other than 1: {0}")]
    NotSingleAgent(String),
    #[error("atom '{0}' is not in the alphabet")]
    AtomOutsideAlphabet(String),
    #[error("alphabet has {atoms} atoms; enumeration bound is {bound}")]
    BoundExceeded { atoms: usize, bound: usize },
    #[error("extended situation does not cover every world")]
    CoverageViolated,
    #[error("relation refers to undeclared world '{0}'")]
    DanglingWorld(String),
    #[error("unknown world '{0}'")]
    UnknownWorld(String),
    #[error("time budget exhausted")]
    Timeout,
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("invalid model file: {0}")]
    Model(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
