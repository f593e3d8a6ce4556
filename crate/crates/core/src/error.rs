use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow; rerun with a wider scalar type")]
    Overflow,
    #[error("matrix of {cells} cells exceeds the cell budget of {budget}")]
    Budget { cells: usize, budget: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("ill-defined module map: {0}")]
    IllDefinedMap(String),
    #[error("group axioms fail: {0}")]
    NotAGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("broken complex: {0}")]
    BrokenComplex(String),
    #[error("vector is not a cycle")]
    NotACycle,
    #[error("degree {degree} is at the top of the computed range [0, {top}]")]
    TopDegree { degree: usize, top: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Input(String),
}
