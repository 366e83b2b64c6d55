use thiserror::Error;

use crate::algebra::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {left:?} vs {right:?}")]
    FieldMismatch { left: Field, right: Field },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("sample set of size {requested} exceeds the field size {available}")]
    FieldTooSmall { requested: u64, available: u64 },

    #[error("cannot parse scalar `{0}`")]
    ScalarParse(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("monoid mismatch between automata")]
    MonoidMismatch,

    #[error("invalid branching program: {0}")]
    InvalidAbp(String),

    #[error("component mismatch: {0}")]
    ComponentMismatch(String),

    #[error("enumeration budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },

    #[error("engine/cover incompatibility: {0}")]
    EngineCoverIncompatible(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: u128, budget: u128) -> Self {
        Error::BudgetExceeded { what, needed, budget }
    }
}
