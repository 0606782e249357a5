use alloc::string::String;

/// Errors raised by the algebra, the consistency layer and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("universe must contain at least one object")]
    EmptyUniverse,
    #[error("duplicate object name `{0}`")]
    DuplicateName(String),
    #[error("invalid object name `{0}`")]
    InvalidName(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("operands belong to different universes")]
    UniverseMismatch,
    #[error("necessity {necessity} is not contained in admissibility {admissibility}")]
    NotDouble {
        necessity: String,
        admissibility: String,
    },
    #[error("generalized operation applied to an empty family")]
    EmptyFamily,

    #[error("object `{0}` cannot contradict itself")]
    ReflexivePair(String),
    #[error("pair ({0}, {1}) is declared both strong and weak")]
    OverlappingKinds(String, String),
    #[error("dominance is not a strict order: {0}")]
    DominanceNotStrictOrder(String),
    #[error("operand {0} is not admitted to discussion")]
    InputNotDisc(String),
    #[error("agent `{0}` is not covered by the priority ranking")]
    UnrankedAgent(String),
    #[error("invalid priority ranking: {0}")]
    InvalidRanking(String),

    #[error("universe of size {size} exceeds the cap of {cap}")]
    UniverseTooLarge { size: usize, cap: usize },
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
