use std::fmt;

use super::{Id, ModelError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Time,
    Motion,
    Force,
    Causation,
    /// Pathway Tube between State Circles.
    Tube,
    /// Relationship Marker: dotted line with a centered arrowhead.
    Relationship,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 6] =
        [EdgeKind::Time, EdgeKind::Motion, EdgeKind::Force, EdgeKind::Causation, EdgeKind::Tube, EdgeKind::Relationship];

    pub const CHANGE: [EdgeKind; 4] = [EdgeKind::Time, EdgeKind::Motion, EdgeKind::Force, EdgeKind::Causation];

    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::Time => "Time",
            EdgeKind::Motion => "Motion",
            EdgeKind::Force => "Force",
            EdgeKind::Causation => "Causation",
            EdgeKind::Tube => "Tube",
            EdgeKind::Relationship => "Relationship",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Time, Motion, Force and Causation arrows.
    pub fn is_change(self) -> bool {
        !matches!(self, EdgeKind::Tube | EdgeKind::Relationship)
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which side of a Force arrow is drawn: the exerting end or the end being
/// acted upon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ForceRole {
    Exerts,
    ActedUpon,
}

impl ForceRole {
    pub fn keyword(self) -> &'static str {
        match self {
            ForceRole::Exerts => "exerts",
            ForceRole::ActedUpon => "acted_upon",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        [ForceRole::Exerts, ForceRole::ActedUpon].into_iter().find(|r| r.keyword() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelDirection {
    Forward,
    Backward,
    Both,
}

impl RelDirection {
    pub fn keyword(self) -> &'static str {
        match self {
            RelDirection::Forward => "forward",
            RelDirection::Backward => "backward",
            RelDirection::Both => "both",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        [RelDirection::Forward, RelDirection::Backward, RelDirection::Both].into_iter().find(|r| r.keyword() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    kind: EdgeKind,
    source: Option<Id>,
    target: Option<Id>,
    role: Option<ForceRole>,
    direction: Option<RelDirection>,
    moves: Option<Id>,
    label: Option<String>,
    attribute: Option<String>,
}

impl Edge {
    pub fn new(kind: EdgeKind, source: Option<Id>, target: Option<Id>) -> Result<Self, ModelError> {
        if !kind.is_change() && (source.is_none() || target.is_none()) {
            return Err(ModelError::InvalidEdge(format!("a {kind} edge needs both endpoints")));
        }
        Ok(Edge { kind, source, target, role: None, direction: None, moves: None, label: None, attribute: None })
    }

    pub fn between(kind: EdgeKind, source: &Id, target: &Id) -> Result<Self, ModelError> {
        Edge::new(kind, Some(source.clone()), Some(target.clone()))
    }

    pub fn solitary(kind: EdgeKind) -> Result<Self, ModelError> {
        Edge::new(kind, None, None)
    }

    pub fn with_role(mut self, role: ForceRole) -> Result<Self, ModelError> {
        if self.kind != EdgeKind::Force {
            return Err(ModelError::InvalidEdge(format!("only Force edges take a role, not {}", self.kind)));
        }
        self.role = Some(role);
        Ok(self)
    }

    pub fn with_direction(mut self, d: RelDirection) -> Result<Self, ModelError> {
        if self.kind != EdgeKind::Relationship {
            return Err(ModelError::InvalidEdge(format!("only Relationship edges take a direction, not {}", self.kind)));
        }
        self.direction = Some(d);
        Ok(self)
    }

    /// The element carried along a Motion edge (shorthand transfer).
    pub fn with_moves(mut self, moved: &Id) -> Result<Self, ModelError> {
        if self.kind != EdgeKind::Motion {
            return Err(ModelError::InvalidEdge(format!("only Motion edges move an element, not {}", self.kind)));
        }
        self.moves = Some(moved.clone());
        Ok(self)
    }

    /// The attribute a Relationship Marker links to.
    pub fn with_attribute(mut self, attribute: &str) -> Result<Self, ModelError> {
        if self.kind != EdgeKind::Relationship {
            return Err(ModelError::InvalidEdge(format!("only Relationship edges name an attribute, not {}", self.kind)));
        }
        if attribute.is_empty() {
            return Err(ModelError::InvalidEdge("empty attribute".into()));
        }
        self.attribute = Some(attribute.to_string());
        Ok(self)
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = (!label.is_empty()).then(|| label.to_string());
        self
    }

    pub fn kind(&self) -> EdgeKind {
        self.kind
    }

    pub fn source(&self) -> Option<&Id> {
        self.source.as_ref()
    }

    pub fn target(&self) -> Option<&Id> {
        self.target.as_ref()
    }

    pub fn role(&self) -> Option<ForceRole> {
        self.role
    }

    pub fn direction(&self) -> Option<RelDirection> {
        self.direction
    }

    pub fn moves(&self) -> Option<&Id> {
        self.moves.as_ref()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn attribute(&self) -> Option<&str> {
        self.attribute.as_deref()
    }

    pub fn endpoints(&self) -> impl Iterator<Item = &Id> {
        self.source.iter().chain(self.target.iter())
    }

    pub(crate) fn map_ids(&mut self, f: &mut dyn FnMut(&Id) -> Id) {
        for id in [&mut self.source, &mut self.target, &mut self.moves].into_iter().flatten() {
            *id = f(id);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> Id {
        Id::new(s).unwrap()
    }

    #[test]
    fn tube_needs_both_ends() {
        assert!(Edge::new(EdgeKind::Tube, Some(id("a")), None).is_err());
        assert!(Edge::between(EdgeKind::Tube, &id("a"), &id("b")).is_ok());
        assert!(Edge::new(EdgeKind::Relationship, None, None).is_err());
    }

    #[test]
    fn change_edges_may_be_solitary() {
        for k in EdgeKind::CHANGE {
            assert!(Edge::solitary(k).is_ok());
        }
    }

    #[test]
    fn fields_restricted_by_kind() {
        let m = Edge::solitary(EdgeKind::Motion).unwrap();
        assert!(m.clone().with_role(ForceRole::Exerts).is_err());
        assert!(m.clone().with_moves(&id("x")).is_ok());
        let f = Edge::solitary(EdgeKind::Force).unwrap();
        assert!(f.clone().with_role(ForceRole::ActedUpon).is_ok());
        assert!(f.with_moves(&id("x")).is_err());
        let r = Edge::between(EdgeKind::Relationship, &id("a"), &id("b")).unwrap();
        assert!(r.clone().with_attribute("mortality").is_ok());
        assert!(r.with_direction(RelDirection::Both).is_ok());
        assert!(m.with_attribute("x").is_err());
    }
}
