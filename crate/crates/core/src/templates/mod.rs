//! Constructors for canonical diagrams: primitive acts, sentence patterns,
//! time aspects, syllogisms, arithmetic, flowcharts and voice.
//!
//! Every constructor returns a diagram that validates without violations.

mod arithmetic;
mod aspect;
mod flowchart;
mod pattern;
mod primitive;
mod syllogism;
mod voice;

use thiserror::Error;

use crate::model::{
    AnchorRole, Diagram, Edge, EdgeKind, Element, ElementKind, Id, ObjectPayload, Payload, TimeAnchorPayload, Value,
};

pub use arithmetic::{build_arithmetic, Arithmetic, Operator};
pub use aspect::{build_aspect, Aspect, AspectSpec, Continuation, Tense};
pub use flowchart::{build_flowchart, format_trace, trace, FlowKind, Flowchart, MAX_STEPS};
pub use pattern::{build_pattern, BasicPattern};
pub use primitive::{build_atrans, build_primitive, PrimitiveAct};
pub use syllogism::{build_syllogism, build_syllogism_ordered, PremiseOrder, SyllogismForm};
pub use voice::{build_active, build_passive};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("missing role {0:?}")]
    MissingRole(&'static str),
    #[error("unsupported operator {0:?}")]
    UnsupportedOperator(String),
    #[error("arithmetic result is not finite")]
    NonFiniteResult,
    #[error("program has no statements")]
    EmptyProgram,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid program: {0}")]
    InvalidProgram(String),
    #[error("trace: {0}")]
    Trace(String),
    #[error("unknown template {0:?}")]
    UnknownTemplate(String),
}

/// Role labels in order, or `MissingRole` naming the first absent one.
pub(crate) fn take_roles<'a, const N: usize>(
    labels: &[&'a str],
    names: [&'static str; N],
) -> Result<[&'a str; N], TemplateError> {
    let mut out = [""; N];
    for (i, name) in names.iter().enumerate() {
        out[i] = *labels.get(i).ok_or(TemplateError::MissingRole(name))?;
    }
    Ok(out)
}

pub(crate) fn id(s: &str) -> Id {
    Id::new(s).expect("template ids are valid")
}

/// Diagram under construction with readable, fixed ids.
pub(crate) struct Draft {
    pub d: Diagram,
}

impl Draft {
    pub fn new() -> Self {
        Draft { d: Diagram::new() }
    }

    pub fn elem(&mut self, name: &str, e: Element, parent: Option<&str>) -> Id {
        let i = id(name);
        let p = parent.map(id);
        self.d.insert_element(i.clone(), e, p.as_ref()).expect("template element fits");
        i
    }

    pub fn circle(&mut self, name: &str, kind: ElementKind, label: &str, parent: Option<&str>) -> Id {
        self.elem(name, Element::labeled(kind, label), parent)
    }

    pub fn object(&mut self, name: &str, label: &str, o: ObjectPayload, parent: Option<&str>) -> Id {
        let e = Element::labeled(ElementKind::PhysicalObjectCircle, label).with_payload(Payload::Object(o)).expect("object");
        self.elem(name, e, parent)
    }

    pub fn edge(&mut self, name: &str, e: Edge) -> Id {
        let i = id(name);
        self.d.insert_edge(i.clone(), e).expect("template edge fits");
        i
    }

    pub fn time_axis(&mut self, name: &str) -> Id {
        self.edge(name, Edge::solitary(EdgeKind::Time).expect("solitary time").with_label("t"))
    }

    pub fn anchor(&mut self, name: &str, axis: &str, t: f64, role: AnchorRole, label: &str) -> Id {
        let p = Payload::TimeAnchor(TimeAnchorPayload { axis: Some(id(axis)), t, role });
        let e = Element::labeled(ElementKind::TimeAnchor, label).with_payload(p).expect("anchor");
        self.elem(name, e, None)
    }

    pub fn bind(&mut self, owner: &str, attr: &str, v: Value) {
        self.d.bind(&id(owner), attr, v).expect("template binding");
    }

    pub fn finish(self) -> Diagram {
        self.d
    }
}

/// Edge from `src` to `dst`, either of which may be empty for a loose end.
pub(crate) fn arrow(kind: EdgeKind, src: &str, dst: &str) -> Edge {
    let end = |s: &str| (!s.is_empty()).then(|| id(s));
    Edge::new(kind, end(src), end(dst)).expect("template endpoints")
}

pub(crate) fn role(r: crate::model::GrammaticalRole) -> ObjectPayload {
    ObjectPayload { role: Some(r), ..ObjectPayload::default() }
}

/// Names accepted by [`build_named`].
pub fn template_names() -> Vec<String> {
    let mut out: Vec<String> = PrimitiveAct::ALL.iter().map(|a| a.name().to_string()).collect();
    out.push("ATRANS_FULL".into());
    out.extend(BasicPattern::ALL.iter().map(|p| p.name().to_string()));
    for t in Tense::ALL {
        for a in Aspect::ALL {
            out.push(format!("aspect:{}-{}", t.name(), a.name()));
        }
    }
    for t in Tense::ALL {
        out.push(format!("aspect:{}-perfect-progressive-both", t.name()));
    }
    out.extend(SyllogismForm::ALL.iter().map(|s| s.name().to_lowercase()));
    out.extend(Operator::ALL.iter().map(|o| format!("arithmetic:{}", o.symbol())));
    out.extend(["flowchart:sequential", "flowchart:loop", "flowchart:branch", "passive", "active"].map(String::from));
    out
}

/// Builds a template by name with positional role labels; roles left out
/// fall back to the stock example labels.
pub fn build_named(name: &str, roles: &[&str]) -> Result<Diagram, TemplateError> {
    let or = |defaults: &[&'static str]| -> Vec<String> {
        defaults.iter().enumerate().map(|(i, d)| roles.get(i).copied().unwrap_or(d).to_string()).collect()
    };
    if let Some(act) = PrimitiveAct::from_name(name) {
        let labels = or(act.default_labels());
        return build_primitive(act, &labels.iter().map(String::as_str).collect::<Vec<_>>());
    }
    if name == "ATRANS_FULL" {
        let l = or(&["giver", "receiver", "ownership"]);
        return Ok(build_atrans(&l[0], &l[1], &l[2], true));
    }
    if let Some(p) = BasicPattern::from_name(name) {
        let labels = or(p.default_labels());
        return build_pattern(p, &labels.iter().map(String::as_str).collect::<Vec<_>>());
    }
    if let Some(rest) = name.strip_prefix("aspect:") {
        let spec = AspectSpec::parse(rest).ok_or_else(|| TemplateError::UnknownTemplate(name.to_string()))?;
        let l = or(&["Ken", "call"]);
        return Ok(build_aspect(spec, &l[0], &l[1]));
    }
    if let Some(form) = SyllogismForm::from_name(name) {
        let l = or(form.default_terms());
        let steps = build_syllogism(form, [l[0].as_str(), l[1].as_str(), l[2].as_str()])?;
        return Ok(steps.into_iter().last().expect("three steps"));
    }
    if let Some(op) = name.strip_prefix("arithmetic:") {
        let inputs = if roles.is_empty() {
            vec![1.0, 2.0]
        } else {
            roles
                .iter()
                .map(|r| r.trim().parse::<f64>().map_err(|_| TemplateError::InvalidInput(format!("{r:?} is not a number"))))
                .collect::<Result<Vec<_>, _>>()?
        };
        return build_arithmetic(op, &inputs).map(|a| a.diagram);
    }
    if let Some(kind) = name.strip_prefix("flowchart:") {
        let stmts = or(&["S1", "S2", "S3", "S4"]);
        let stmts: Vec<&str> =
            if roles.len() > 4 { roles.to_vec() } else { stmts.iter().map(String::as_str).collect() };
        let kind = match kind {
            "sequential" => FlowKind::Sequential,
            "loop" => FlowKind::Loop { body_start: 1, body_end: stmts.len().saturating_sub(2), iterations: 2 },
            "branch" => FlowKind::Branch { take_else: true },
            _ => return Err(TemplateError::UnknownTemplate(name.to_string())),
        };
        return build_flowchart(kind, &stmts).map(|f| f.diagram);
    }
    match name {
        "passive" => {
            let l = or(&["kick", "ball"]);
            Ok(build_passive(&l[0], &l[1]))
        }
        "active" => {
            let l = or(&["He", "kick", "ball"]);
            Ok(build_active(&l[0], &l[1], &l[2]))
        }
        _ => Err(TemplateError::UnknownTemplate(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::validate;

    #[test]
    fn every_named_template_validates() {
        for name in template_names() {
            let d = build_named(&name, &[]).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(validate(&d).is_empty(), "{name}: {:?}", validate(&d));
            assert!(!d.is_empty(), "{name}");
        }
    }

    #[test]
    fn unknown_template() {
        assert_eq!(build_named("JUGGLE", &[]), Err(TemplateError::UnknownTemplate("JUGGLE".into())));
    }

    #[test]
    fn missing_roles_are_named() {
        let r: Result<[&str; 2], _> = take_roles(&["a"], ["sender", "receiver"]);
        assert_eq!(r, Err(TemplateError::MissingRole("receiver")));
    }
}
