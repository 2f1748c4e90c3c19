//! The diagram model: Building Blocks, values, edges, groups and the
//! containment forest that ties them together.

mod correlation;
mod diagram;
mod edge;
mod element;
mod fuzzy;
mod group;
mod id;
mod value;

use thiserror::Error;

pub use correlation::{
    evaluate_correlation, is_slot_name, parse_equation, parse_expr, CorrelationError, CorrelationPayload, Equation,
    Expr, Op, Slot,
};
pub use diagram::Diagram;
pub use edge::{Edge, EdgeKind, ForceRole, RelDirection};
pub use element::{
    AnchorRole, AppendageKind, CAPayload, Element, ElementKind, GrammaticalRole, Level, MotivationPayload,
    ObjectPayload, Payload, Placement, RobinsonCategory, RobinsonPayload, SwirlyCell, SwirlyPayload, TimeAnchorPayload,
    Valence,
};
pub use fuzzy::{classify_ratio, is_multiple, FuzzyBand, FuzzyBands, FuzzyError};
pub use group::{Group, SplitTimeGroup, StateDiagramGroup, PROBABILITY_TOLERANCE};
pub use id::{is_valid_id, Id};
pub use value::{
    fmt_number, quote, wildcard_matches, AttrName, AttributeBinding, Cap, Existence, MatchOutcome, Range, Triangular,
    Value, Wildcard,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid id {0:?}")]
    InvalidId(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("invalid binding: {0}")]
    InvalidBinding(String),
    #[error("invalid payload: {0}")]
    InvalidPayload(String),
    #[error("{kind} cannot carry a {payload} payload")]
    PayloadMismatch { kind: ElementKind, payload: &'static str },
    #[error("invalid placement: {0}")]
    InvalidPlacement(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("id {0} is already in use")]
    DuplicateId(Id),
    #[error("unknown element {0}")]
    UnknownElement(Id),
    #[error("unknown parent {0}")]
    UnknownParent(Id),
    #[error("parent {parent} is a {kind}, which cannot contain elements")]
    ParentNotContainer { parent: Id, kind: ElementKind },
    #[error("placing {child} inside {parent} would create a containment cycle")]
    ContainmentCycle { child: Id, parent: Id },
    #[error("{0} already has a parent")]
    AlreadyContained(Id),
    #[error("unknown owner {0}")]
    UnknownOwner(Id),
    #[error("{0} cannot host attributes; only Nonquans and change arrows can")]
    IllegalAttributeHost(Id),
    #[error("{owner} already binds {attribute} to a different value")]
    ConflictingDuplicate { owner: Id, attribute: AttrName },
}
