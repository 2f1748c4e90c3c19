//! Combination grammar: legality checking, SCOVA classification and
//! marker queries.

mod legality;
mod query;
mod scova;
mod validate;

use thiserror::Error;

use crate::model::Id;

pub use legality::{LegalityTable, Shape};
pub use query::{resolve_marker, resolve_query};
pub use scova::{generalize, scova_classify, scova_classify_with, BasicKind, BlockKind, Generalization, ScovaConfig};
pub use validate::{validate, validate_with, Violation, ViolationCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("unknown or generalized kind {0:?}")]
    UnknownKind(String),
    #[error("unknown owner {0}")]
    UnknownOwner(Id),
    #[error("{0} is not a placed query marker")]
    NotAQuery(Id),
    #[error("legality table line {line}: {message}")]
    Table { line: usize, message: String },
}
