use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("label {label} outside 1..={n}")]
    LabelOutOfRange { label: u8, n: u8 },
    #[error("object is not acyclic, no linear order exists")]
    NotATournamentOrder,
    #[error("object is not in family {0}")]
    NotInFamily(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("map is not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("map is not injective")]
    NotInjective,
    #[error("enumeration needs {needed} bits, budget is {budget}")]
    BitBudget { needed: u32, budget: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("poset axiom violated: {0}")]
    NotAPoset(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("falsification: {0}")]
    Falsification(String),
}
