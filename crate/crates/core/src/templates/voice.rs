//! Active and passive voice. The passive form keeps the agent as an
//! unlabeled Object Circle.

use crate::model::{AnchorRole, AppendageKind, Diagram, EdgeKind, ForceRole, GrammaticalRole, ObjectPayload};

use super::{arrow, id, role, Draft};

fn kick(agent: Option<&str>, action: &str, object: &str) -> Diagram {
    let mut t = Draft::new();
    t.object("agent", agent.unwrap_or(""), role(GrammaticalRole::Subject), None);
    let foot = ObjectPayload {
        appendage_of: Some(id("agent")),
        appendage: Some(AppendageKind::External),
        end_effector: true,
        ..ObjectPayload::default()
    };
    t.object("foot", "foot", foot, None);
    t.object("object", object, role(GrammaticalRole::DirectObject), None);
    let f = arrow(EdgeKind::Force, "foot", "object").with_role(ForceRole::Exerts).expect("force role");
    t.edge("strike", f.with_label(action));
    t.edge("flight", arrow(EdgeKind::Motion, "object", "").with_moves(&id("object")).expect("motion"));
    t.time_axis("time");
    t.anchor("event", "time", -1.0, AnchorRole::Event, action);
    t.anchor("now", "time", 0.0, AnchorRole::Now, "0");
    t.d.set_meta("template", if agent.is_some() { "active" } else { "passive" });
    t.finish()
}

/// "The ball was kicked": the kicker is implied but unnamed.
pub fn build_passive(action: &str, object: &str) -> Diagram {
    kick(None, action, object)
}

/// "He kicked the ball".
pub fn build_active(agent: &str, action: &str, object: &str) -> Diagram {
    kick(Some(agent), action, object)
}
