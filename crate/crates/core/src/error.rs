use thiserror::Error;

/// Errors raised when objects from different spaces are combined or a
/// structural invariant would be broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("possibility space must have at least one outcome")]
    EmptySpace,
    #[error("duplicate outcome label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown outcome label `{0}`")]
    UnknownLabel(String),
    #[error("empty conditioning event")]
    EmptyEvent,
    #[error("arity mismatch: expected {expected} values, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("objects live on different possibility spaces")]
    SpaceMismatch,
    #[error("factor mismatch: gamble does not live on factor {0} of the product space")]
    FactorMismatch(usize),
    #[error("lower bound {bound} exceeds the maximum {max} of the gamble on its event")]
    BoundAboveMax { bound: String, max: String },
    #[error("gamble must be non-negative")]
    NegativeGamble,
    #[error("not a probability mass function: {0}")]
    NotAMassFunction(String),
    #[error("{0}")]
    Other(String),
}

/// Errors from queries on an uncertainty model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("assessment set is not coherent: {0}")]
    Incoherent(String),
    #[error("size cap exceeded: {found} > {cap}")]
    SizeCap { found: usize, cap: usize },
    #[error("scope error: {0}")]
    Scope(String),
    #[error("conditioning event {0} is not a member of the conditioning family")]
    NotInFamily(String),
}
