//! Basic sentence patterns.

use crate::model::{Diagram, EdgeKind, ElementKind, GrammaticalRole, Value};

use super::{arrow, id, role, take_roles, Draft, TemplateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicPattern {
    /// "The ball is red."
    AttributePattern,
    /// "A robin is a bird."
    SupersetPattern,
    /// "He walks."
    SelfMove,
    /// "He touches the wall."
    Contact,
    /// "He gives her the book."
    Transfer,
    /// "They trade hats."
    Swap,
}

impl BasicPattern {
    pub const ALL: [BasicPattern; 6] = [
        BasicPattern::AttributePattern,
        BasicPattern::SupersetPattern,
        BasicPattern::SelfMove,
        BasicPattern::Contact,
        BasicPattern::Transfer,
        BasicPattern::Swap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasicPattern::AttributePattern => "AttributePattern",
            BasicPattern::SupersetPattern => "SupersetPattern",
            BasicPattern::SelfMove => "SelfMove",
            BasicPattern::Contact => "Contact",
            BasicPattern::Transfer => "Transfer",
            BasicPattern::Swap => "Swap",
        }
    }

    /// Accepts the full name or the one-letter aliases E, C and T.
    pub fn from_name(s: &str) -> Option<BasicPattern> {
        match s {
            "E" => Some(BasicPattern::SelfMove),
            "C" => Some(BasicPattern::Contact),
            "T" => Some(BasicPattern::Transfer),
            _ => Self::ALL.into_iter().find(|p| p.name() == s),
        }
    }

    pub fn roles(self) -> &'static [&'static str] {
        match self {
            BasicPattern::AttributePattern => &["thing", "adjective"],
            BasicPattern::SupersetPattern => &["member", "set"],
            BasicPattern::SelfMove => &["agent", "verb"],
            BasicPattern::Contact => &["agent", "verb", "object"],
            BasicPattern::Transfer => &["agent", "item", "recipient"],
            BasicPattern::Swap => &["first", "second", "first item", "second item"],
        }
    }

    pub fn default_labels(self) -> &'static [&'static str] {
        match self {
            BasicPattern::AttributePattern => &["ball", "red"],
            BasicPattern::SupersetPattern => &["robin", "birds"],
            BasicPattern::SelfMove => &["He", "walk"],
            BasicPattern::Contact => &["He", "touch", "wall"],
            BasicPattern::Transfer => &["He", "book", "her"],
            BasicPattern::Swap => &["Ann", "Ben", "red hat", "blue hat"],
        }
    }
}

pub fn build_pattern(p: BasicPattern, labels: &[&str]) -> Result<Diagram, TemplateError> {
    let mut t = Draft::new();
    let subject = role(GrammaticalRole::Subject);
    match p {
        BasicPattern::AttributePattern => {
            let [thing, adj] = take_roles(labels, ["thing", "adjective"])?;
            t.object("thing", thing, subject, None);
            t.d.bind(&id("thing"), adj, Value::text("true")).map_err(|e| TemplateError::InvalidInput(e.to_string()))?;
        }
        BasicPattern::SupersetPattern => {
            let [member, set] = take_roles(labels, ["member", "set"])?;
            t.circle("set", ElementKind::AggregationBox, set, None);
            t.object("member", member, subject, Some("set"));
        }
        BasicPattern::SelfMove => {
            let [agent, verb] = take_roles(labels, ["agent", "verb"])?;
            t.object("agent", agent, subject, None);
            t.edge("act", arrow(EdgeKind::Motion, "agent", "").with_moves(&id("agent")).unwrap().with_label(verb));
        }
        BasicPattern::Contact => {
            let [agent, verb, object] = take_roles(labels, ["agent", "verb", "object"])?;
            t.object("agent", agent, subject, None);
            t.object("object", object, role(GrammaticalRole::DirectObject), None);
            let m = arrow(EdgeKind::Motion, "agent", "object").with_moves(&id("agent")).unwrap();
            t.edge("act", m.with_label(verb));
        }
        BasicPattern::Transfer => {
            let [agent, item, recipient] = take_roles(labels, ["agent", "item", "recipient"])?;
            t.object("agent", agent, subject, None);
            t.object("item", item, role(GrammaticalRole::DirectObject), None);
            t.object("recipient", recipient, role(GrammaticalRole::IndirectObject), None);
            t.edge("act", arrow(EdgeKind::Motion, "agent", "recipient").with_moves(&id("item")).unwrap());
        }
        BasicPattern::Swap => {
            let [a, b, x, y] = take_roles(labels, ["first", "second", "first item", "second item"])?;
            t.object("first", a, subject.clone(), None);
            t.object("second", b, subject, None);
            t.object("item1", x, role(GrammaticalRole::DirectObject), None);
            t.object("item2", y, role(GrammaticalRole::DirectObject), None);
            t.edge("give1", arrow(EdgeKind::Motion, "first", "second").with_moves(&id("item1")).unwrap());
            t.edge("give2", arrow(EdgeKind::Motion, "second", "first").with_moves(&id("item2")).unwrap());
        }
    }
    t.d.set_meta("template", p.name());
    Ok(t.finish())
}
