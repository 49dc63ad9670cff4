use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size guard exceeded in {context}: projected workload {workload} exceeds cap {cap}")]
    SizeGuard {
        context: String,
        workload: u128,
        cap: u64,
    },

    #[error("basis vector {index} of the smaller subspace is not contained in the larger one")]
    NotContained { index: usize },

    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    Associativity(String, String, String),

    #[error("unit law fails on basis element {0}")]
    Unit(String),

    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("bimodule axiom fails: {0}")]
    Bimodule(String),

    #[error("action is not a unital algebra automorphism: {0}")]
    Action(String),

    #[error("separability witness rejected: {0}")]
    Separability(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("induced boundary does not descend to the quotient: {0}")]
    NonDescent(String),

    #[error("not finitely supported; preimage formula inapplicable")]
    NotFinitelySupported,

    #[error("unknown check {0:?}")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
