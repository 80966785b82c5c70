use crate::base::C64;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series budget exhausted after {terms} terms ({context})")]
    BudgetExhausted { context: &'static str, terms: usize },
    #[error("argument {z} lies within relative distance {distance:e} of a pole")]
    NearPole { z: C64, distance: f64 },
    #[error("outside domain: {0}")]
    DomainError(String),
    #[error("no product representation converges for these periods")]
    NoConvergentRepresentation,
    #[error("pole audit failed: {0}")]
    PoleOnContour(String),
    #[error("no convergence at {nodes} nodes per dimension (last delta {delta:e})")]
    NoConvergence { nodes: usize, delta: f64 },
    #[error("window violation: {0}")]
    WindowViolation(String),
    #[error("audit failure: {0}")]
    AuditFailure(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

impl Error {
    /// Stable short name used in serialized reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidBase(_) => "InvalidBase",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::BudgetExhausted { .. } => "BudgetExhausted",
            Error::NearPole { .. } => "NearPole",
            Error::DomainError(_) => "DomainError",
            Error::NoConvergentRepresentation => "NoConvergentRepresentation",
            Error::PoleOnContour(_) => "PoleAudit",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::WindowViolation(_) => "WindowViolation",
            Error::AuditFailure(_) => "AuditFailure",
            Error::InvalidRep(_) => "InvalidRep",
            Error::Schema { .. } => "SchemaError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
