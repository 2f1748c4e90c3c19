//! The eleven conceptual dependency primitive acts, with the PTRANS, PROPEL
//! and MBUILD variants split out.

use std::collections::BTreeSet;

use crate::model::{
    AnchorRole, AppendageKind, Diagram, EdgeKind, Element, ElementKind, GrammaticalRole, Group, ObjectPayload, Payload,
    StateDiagramGroup, Value,
};

use super::{arrow, id, role, take_roles, Draft, TemplateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimitiveAct {
    Atrans,
    PtransT,
    PtransI,
    Propel,
    PropelM,
    Mtrans,
    MbuildS,
    MbuildC,
    Speak,
    Attend,
    Move,
    Grasp,
    Ingest,
    Expel,
}

impl PrimitiveAct {
    pub const ALL: [PrimitiveAct; 14] = [
        PrimitiveAct::Atrans,
        PrimitiveAct::PtransT,
        PrimitiveAct::PtransI,
        PrimitiveAct::Propel,
        PrimitiveAct::PropelM,
        PrimitiveAct::Mtrans,
        PrimitiveAct::MbuildS,
        PrimitiveAct::MbuildC,
        PrimitiveAct::Speak,
        PrimitiveAct::Attend,
        PrimitiveAct::Move,
        PrimitiveAct::Grasp,
        PrimitiveAct::Ingest,
        PrimitiveAct::Expel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimitiveAct::Atrans => "ATRANS",
            PrimitiveAct::PtransT => "PTRANS_T",
            PrimitiveAct::PtransI => "PTRANS_I",
            PrimitiveAct::Propel => "PROPEL",
            PrimitiveAct::PropelM => "PROPEL_M",
            PrimitiveAct::Mtrans => "MTRANS",
            PrimitiveAct::MbuildS => "MBUILD_S",
            PrimitiveAct::MbuildC => "MBUILD_C",
            PrimitiveAct::Speak => "SPEAK",
            PrimitiveAct::Attend => "ATTEND",
            PrimitiveAct::Move => "MOVE",
            PrimitiveAct::Grasp => "GRASP",
            PrimitiveAct::Ingest => "INGEST",
            PrimitiveAct::Expel => "EXPEL",
        }
    }

    pub fn from_name(s: &str) -> Option<PrimitiveAct> {
        Self::ALL.into_iter().find(|a| a.name().eq_ignore_ascii_case(s))
    }

    /// Role names in the order `build_primitive` expects labels.
    pub fn roles(self) -> &'static [&'static str] {
        match self {
            PrimitiveAct::Atrans => &["giver", "receiver"],
            PrimitiveAct::PtransT | PrimitiveAct::Propel | PrimitiveAct::PropelM => &["agent", "object"],
            PrimitiveAct::PtransI | PrimitiveAct::Speak => &["agent"],
            PrimitiveAct::Mtrans => &["sender", "receiver"],
            PrimitiveAct::Attend => &["source", "attender"],
            PrimitiveAct::MbuildS => &["thinker"],
            PrimitiveAct::MbuildC => &["thinker", "first thought", "second thought"],
            PrimitiveAct::Move => &["agent", "body part"],
            PrimitiveAct::Grasp => &["agent", "object"],
            PrimitiveAct::Ingest | PrimitiveAct::Expel => &["animal", "object"],
        }
    }

    pub fn default_labels(self) -> &'static [&'static str] {
        match self {
            PrimitiveAct::Atrans => &["Bob", "Grace"],
            PrimitiveAct::PtransT => &["He", "radio"],
            PrimitiveAct::PtransI => &["He"],
            PrimitiveAct::Propel => &["He", "wall"],
            PrimitiveAct::PropelM => &["He", "ball"],
            PrimitiveAct::Mtrans => &["Bob", "Grace"],
            PrimitiveAct::Attend => &["broadcaster", "monitor"],
            PrimitiveAct::MbuildS => &["thinker"],
            PrimitiveAct::MbuildC => &["thinker", "idea A", "idea B"],
            PrimitiveAct::Speak => &["speaker"],
            PrimitiveAct::Move => &["body", "arm"],
            PrimitiveAct::Grasp => &["person", "cup"],
            PrimitiveAct::Ingest => &["animal", "food"],
            PrimitiveAct::Expel => &["animal", "object"],
        }
    }
}

fn roles<const N: usize>(act: PrimitiveAct, labels: &[&str]) -> Result<[String; N], TemplateError> {
    let names: [&'static str; N] = act.roles().try_into().expect("role arity");
    Ok(take_roles(labels, names)?.map(str::to_string))
}

pub fn build_primitive(act: PrimitiveAct, labels: &[&str]) -> Result<Diagram, TemplateError> {
    let mut t = Draft::new();
    let subject = role(GrammaticalRole::Subject);
    let direct = role(GrammaticalRole::DirectObject);
    match act {
        PrimitiveAct::Atrans => {
            let [g, r] = roles(act, labels)?;
            return Ok(build_atrans(&g, &r, "ownership", false));
        }
        PrimitiveAct::Speak => {
            let [a] = roles(act, labels)?;
            t.object("speaker", &a, subject, None);
            t.circle("sound", ElementKind::DataObjectCircle, "sound", None);
            t.edge("emit", arrow(EdgeKind::Motion, "speaker", "").with_moves(&id("sound")).unwrap());
            t.bind("emit", "modality", Value::text("sound"));
        }
        PrimitiveAct::PtransI => {
            let [a] = roles(act, labels)?;
            t.object("agent", &a, subject, None);
            t.edge("go", arrow(EdgeKind::Motion, "agent", "").with_moves(&id("agent")).unwrap());
        }
        PrimitiveAct::PtransT => {
            let [a, o] = roles(act, labels)?;
            t.object("agent", &a, subject, None);
            t.object("object", &o, direct, None);
            t.edge("carry", arrow(EdgeKind::Motion, "agent", "").with_moves(&id("object")).unwrap());
        }
        PrimitiveAct::Propel | PrimitiveAct::PropelM => {
            let [a, o] = roles(act, labels)?;
            t.object("agent", &a, subject, None);
            t.object("object", &o, direct, None);
            t.edge("push", arrow(EdgeKind::Force, "agent", "object").with_role(crate::model::ForceRole::Exerts).unwrap());
            if act == PrimitiveAct::PropelM {
                t.edge("result", arrow(EdgeKind::Motion, "object", "").with_moves(&id("object")).unwrap());
            }
        }
        PrimitiveAct::Mtrans | PrimitiveAct::Attend => {
            let [a, b] = roles(act, labels)?;
            let msg = if act == PrimitiveAct::Mtrans { "information" } else { "stream" };
            t.object("from", &a, subject, None);
            t.object("to", &b, ObjectPayload::default(), None);
            t.circle("data", ElementKind::DataObjectCircle, msg, None);
            t.edge("send", arrow(EdgeKind::Motion, "from", "to").with_moves(&id("data")).unwrap());
            let ring = Element::new(ElementKind::AttendRing).with_payload(Payload::AttendRing { on: Some(id("send")) });
            t.elem("attend", ring.expect("attend ring"), None);
        }
        PrimitiveAct::MbuildS => {
            let [a] = roles(act, labels)?;
            t.object("thinker", &a, subject, None);
            t.circle("thought", ElementKind::DataObjectCircle, "new thought", None);
            t.edge("build", arrow(EdgeKind::Causation, "thinker", "thought").with_label("from scratch"));
        }
        PrimitiveAct::MbuildC => {
            let [a, x, y] = roles(act, labels)?;
            t.object("thinker", &a, subject, None);
            t.circle("old1", ElementKind::DataObjectCircle, &x, None);
            t.circle("old2", ElementKind::DataObjectCircle, &y, None);
            t.circle("thought", ElementKind::DataObjectCircle, "new thought", None);
            t.edge("merge1", arrow(EdgeKind::Causation, "old1", "thought").with_label("combine"));
            t.edge("merge2", arrow(EdgeKind::Causation, "old2", "thought").with_label("combine"));
            t.edge("build", arrow(EdgeKind::Causation, "thinker", "thought"));
        }
        PrimitiveAct::Move => {
            let [a, p] = roles(act, labels)?;
            t.object("body", &a, subject, None);
            let part = ObjectPayload {
                role: Some(GrammaticalRole::DirectObject),
                appendage_of: Some(id("body")),
                appendage: Some(AppendageKind::External),
                end_effector: false,
            };
            t.object("part", &p, part, None);
            t.edge("swing", arrow(EdgeKind::Motion, "part", "").with_moves(&id("part")).unwrap());
            t.time_axis("time");
            t.anchor("start", "time", 0.0, AnchorRole::EventStart, "start");
            t.anchor("end", "time", 1.0, AnchorRole::EventEnd, "end");
        }
        PrimitiveAct::Grasp => {
            let [a, o] = roles(act, labels)?;
            t.object("body", &a, subject, None);
            let arm = ObjectPayload {
                appendage_of: Some(id("body")),
                appendage: Some(AppendageKind::External),
                ..ObjectPayload::default()
            };
            t.object("arm", "arm", arm, None);
            let hand = ObjectPayload {
                appendage_of: Some(id("arm")),
                appendage: Some(AppendageKind::External),
                end_effector: true,
                ..ObjectPayload::default()
            };
            t.object("hand", "hand", hand, None);
            t.object("object", &o, direct, None);
            t.edge("reach", arrow(EdgeKind::Motion, "arm", "object").with_moves(&id("hand")).unwrap());
            t.edge("grip", arrow(EdgeKind::Force, "hand", "object").with_label("grip"));
        }
        PrimitiveAct::Ingest | PrimitiveAct::Expel => {
            let [a, o] = roles(act, labels)?;
            let mut phases = ["outside", "surface", "inside"];
            if act == PrimitiveAct::Expel {
                phases.reverse();
            }
            t.time_axis("time");
            for (i, place) in phases.iter().enumerate() {
                let n = i + 1;
                let phase = format!("phase{n}");
                t.circle(&phase, ElementKind::AggregationBox, &format!("phase {n}"), None);
                t.object(&format!("body{n}"), &a, role(GrammaticalRole::Subject), Some(&phase));
                t.object(&format!("object{n}"), &o, role(GrammaticalRole::DirectObject), Some(&phase));
                t.bind(&format!("object{n}"), "location", Value::text(*place));
                t.anchor(&format!("at{n}"), "time", n as f64, AnchorRole::Event, &format!("phase {n}"));
                let (src, dst) = if act == PrimitiveAct::Ingest {
                    (format!("object{n}"), format!("body{n}"))
                } else {
                    (format!("body{n}"), String::new())
                };
                if n < 3 || act == PrimitiveAct::Expel {
                    let m = arrow(EdgeKind::Motion, &src, &dst).with_moves(&id(&format!("object{n}"))).unwrap();
                    t.edge(&format!("move{n}"), m);
                }
            }
        }
    }
    t.d.set_meta("template", act.name());
    Ok(t.finish())
}

/// Shorthand transfer of an ownership data object; `comprehensive` adds
/// the four-state legal ownership State Diagram.
pub fn build_atrans(giver: &str, receiver: &str, item: &str, comprehensive: bool) -> Diagram {
    let mut t = Draft::new();
    t.object("giver", giver, role(GrammaticalRole::Subject), None);
    t.object("receiver", receiver, role(GrammaticalRole::IndirectObject), None);
    t.circle("item", ElementKind::DataObjectCircle, item, None);
    t.edge("transfer", arrow(EdgeKind::Motion, "giver", "receiver").with_moves(&id("item")).unwrap());
    if comprehensive {
        let states = [
            ("neither", "neither owns".to_string()),
            ("first", format!("{giver} owns")),
            ("second", format!("{receiver} owns")),
            ("both", "both own".to_string()),
        ];
        for (name, label) in &states {
            t.circle(name, ElementKind::StateCircle, label, None);
        }
        let tubes = [
            ("give", "first", "second", "transfer"),
            ("take_back", "second", "first", "return"),
            ("share", "first", "both", "share"),
            ("cede", "both", "second", "cede"),
            ("buy", "neither", "first", "acquire"),
            ("lose", "first", "neither", "relinquish"),
        ];
        let mut tube_ids = BTreeSet::new();
        for (name, a, b, label) in tubes {
            tube_ids.insert(t.edge(name, arrow(EdgeKind::Tube, a, b).with_label(label)));
        }
        let g = StateDiagramGroup::new(states.iter().map(|(n, _)| id(n)).collect(), tube_ids)
            .with_marker(&id("second"))
            .with_owner(&id("item"));
        t.d.insert_group(id("ownership"), Group::StateDiagram(g)).expect("ownership states");
    }
    t.d.set_meta("template", if comprehensive { "ATRANS_FULL" } else { "ATRANS" });
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::validate;

    fn build(act: PrimitiveAct) -> Diagram {
        build_primitive(act, act.default_labels()).unwrap()
    }

    #[test]
    fn all_acts_validate() {
        for act in PrimitiveAct::ALL {
            let d = build(act);
            assert!(validate(&d).is_empty(), "{}: {:?}", act.name(), validate(&d));
            assert_eq!(PrimitiveAct::from_name(act.name()), Some(act));
        }
        assert!(validate(&build_atrans("a", "b", "deed", true)).is_empty());
    }

    #[test]
    fn mtrans_has_attend_ring_on_data_motion() {
        let d = build(PrimitiveAct::Mtrans);
        let ring = d.elements().values().find(|e| e.kind() == ElementKind::AttendRing).unwrap();
        let Payload::AttendRing { on: Some(on) } = ring.payload() else { panic!() };
        let edge = d.edge(on.as_str()).unwrap();
        assert_eq!(edge.kind(), EdgeKind::Motion);
        assert_eq!(d.element(edge.moves().unwrap().as_str()).unwrap().kind(), ElementKind::DataObjectCircle);
    }

    #[test]
    fn speak_uses_sound_without_attention() {
        let d = build(PrimitiveAct::Speak);
        assert_eq!(d.count_kind(ElementKind::AttendRing), 0);
        let (eid, _) = d.edges().iter().find(|(_, e)| e.kind() == EdgeKind::Motion).unwrap();
        assert_eq!(d.binding(eid.as_str(), "modality"), Some(&Value::text("sound")));
    }

    #[test]
    fn structural_counts() {
        let circles = |d: &Diagram| d.count_kind(ElementKind::PhysicalObjectCircle) + d.count_kind(ElementKind::DataObjectCircle);
        let motions = |d: &Diagram| d.edges().values().filter(|e| e.kind() == EdgeKind::Motion).count();
        let d = build(PrimitiveAct::PtransT);
        assert_eq!((circles(&d), motions(&d)), (2, 1));
        for act in [PrimitiveAct::Ingest, PrimitiveAct::Expel] {
            let d = build(act);
            let events = d
                .elements()
                .values()
                .filter(|e| matches!(e.payload(), Payload::TimeAnchor(a) if a.role == AnchorRole::Event))
                .count();
            assert_eq!(events, 3);
        }
        let d = build(PrimitiveAct::Grasp);
        assert!(d.elements().values().any(|e| e.object().is_some_and(|o| o.end_effector)));
        let d = build(PrimitiveAct::Move);
        assert!(d.elements().values().any(|e| e.object().is_some_and(|o| o.appendage == Some(AppendageKind::External))));
    }

    #[test]
    fn atrans_forms() {
        let short = build(PrimitiveAct::Atrans);
        assert!(short.groups().is_empty());
        let full = build_atrans("Bob", "Grace", "ownership", true);
        let Group::StateDiagram(g) = full.groups().values().next().unwrap() else { panic!() };
        assert_eq!(g.states.len(), 4);
    }

    #[test]
    fn missing_role() {
        assert_eq!(build_primitive(PrimitiveAct::Mtrans, &["Bob"]), Err(TemplateError::MissingRole("receiver")));
        assert_eq!(build_primitive(PrimitiveAct::Speak, &[]), Err(TemplateError::MissingRole("agent")));
    }
}
