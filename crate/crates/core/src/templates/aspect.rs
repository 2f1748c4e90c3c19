//! Grammatical tense and aspect drawn as anchors on a timeline.

use crate::model::{AnchorRole, Diagram, EdgeKind, Group, GrammaticalRole, SplitTimeGroup};

use super::{arrow, id, role, Draft};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tense {
    Past,
    Present,
    Future,
}

impl Tense {
    pub const ALL: [Tense; 3] = [Tense::Past, Tense::Present, Tense::Future];

    pub fn name(self) -> &'static str {
        match self {
            Tense::Past => "past",
            Tense::Present => "present",
            Tense::Future => "future",
        }
    }

    pub fn from_name(s: &str) -> Option<Tense> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }

    /// Centre of a simple or progressive event.
    fn centre(self) -> f64 {
        match self {
            Tense::Past => -2.0,
            Tense::Present => 0.0,
            Tense::Future => 2.0,
        }
    }

    /// Reference time of the perfect forms; the present one is "now".
    pub fn reference(self) -> f64 {
        match self {
            Tense::Past => -1.0,
            Tense::Present => 0.0,
            Tense::Future => 3.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Aspect {
    Simple,
    Progressive,
    Perfect,
    PerfectProgressive,
}

impl Aspect {
    pub const ALL: [Aspect; 4] = [Aspect::Simple, Aspect::Progressive, Aspect::Perfect, Aspect::PerfectProgressive];

    pub fn name(self) -> &'static str {
        match self {
            Aspect::Simple => "simple",
            Aspect::Progressive => "progressive",
            Aspect::Perfect => "perfect",
            Aspect::PerfectProgressive => "perfect-progressive",
        }
    }

    pub fn from_name(s: &str) -> Option<Aspect> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }
}

/// Whether a perfect-progressive action goes on past the reference time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Continuation {
    #[default]
    Continues,
    Stops,
    Both,
}

impl Continuation {
    pub const ALL: [Continuation; 3] = [Continuation::Continues, Continuation::Stops, Continuation::Both];

    pub fn name(self) -> &'static str {
        match self {
            Continuation::Continues => "continues",
            Continuation::Stops => "stops",
            Continuation::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AspectSpec {
    pub tense: Tense,
    pub aspect: Aspect,
    /// Only read for the perfect-progressive aspect.
    pub continuation: Continuation,
}

impl AspectSpec {
    pub fn new(tense: Tense, aspect: Aspect) -> Self {
        AspectSpec { tense, aspect, continuation: Continuation::default() }
    }

    pub fn with_continuation(mut self, c: Continuation) -> Self {
        self.continuation = c;
        self
    }

    /// Parses `tense-aspect[-continuation]`, e.g. `future-perfect-progressive-both`.
    pub fn parse(s: &str) -> Option<AspectSpec> {
        let (tense, rest) = s.split_once('-')?;
        let tense = Tense::from_name(tense)?;
        if let Some(a) = Aspect::from_name(rest) {
            return Some(AspectSpec::new(tense, a));
        }
        let (aspect, cont) = rest.rsplit_once('-')?;
        if Aspect::from_name(aspect)? != Aspect::PerfectProgressive {
            return None;
        }
        let c = Continuation::ALL.into_iter().find(|c| c.name() == cont)?;
        Some(AspectSpec::new(tense, Aspect::PerfectProgressive).with_continuation(c))
    }

    pub fn name(&self) -> String {
        match self.aspect {
            Aspect::PerfectProgressive => {
                format!("{}-{}-{}", self.tense.name(), self.aspect.name(), self.continuation.name())
            }
            _ => format!("{}-{}", self.tense.name(), self.aspect.name()),
        }
    }
}

/// Length of a perfect-progressive interval ending at the reference time.
const DURATION: f64 = 1.5;

pub fn build_aspect(spec: AspectSpec, actor: &str, action: &str) -> Diagram {
    let mut t = Draft::new();
    t.object("actor", actor, role(GrammaticalRole::Subject), None);
    t.edge("action", arrow(EdgeKind::Motion, "actor", "").with_label(action));
    t.time_axis("time");
    t.anchor("now", "time", 0.0, AnchorRole::Now, "0");
    let c = spec.tense.centre();
    let r = spec.tense.reference();
    match spec.aspect {
        Aspect::Simple => {
            t.anchor("event", "time", c, AnchorRole::Event, action);
        }
        Aspect::Progressive => {
            t.anchor("start", "time", c - 0.5, AnchorRole::EventStart, "start");
            t.anchor("end", "time", c + 0.5, AnchorRole::EventEnd, "end");
        }
        Aspect::Perfect => {
            t.anchor("event", "time", r - 1.0, AnchorRole::Event, action);
            t.anchor("reference", "time", r, AnchorRole::Reference, "reference");
        }
        Aspect::PerfectProgressive => {
            t.anchor("start", "time", r - DURATION, AnchorRole::EventStart, "start");
            t.anchor("reference", "time", r, AnchorRole::Reference, "reference");
            match spec.continuation {
                Continuation::Continues => {}
                Continuation::Stops => {
                    t.anchor("end", "time", r, AnchorRole::EventEnd, "end");
                }
                Continuation::Both => {
                    t.circle("split", crate::model::ElementKind::XorBox, "", None);
                    t.time_axis("continues");
                    t.time_axis("stops");
                    t.anchor("end", "stops", r, AnchorRole::EventEnd, "end");
                    let g = SplitTimeGroup::new(id("time"), vec![id("continues"), id("stops")], id("split"), None)
                        .expect("two branches");
                    t.d.insert_group(id("alternatives"), Group::SplitTime(g)).expect("split group");
                }
            }
        }
    }
    t.d.set_meta("tense", spec.tense.name());
    t.d.set_meta("aspect", &spec.name());
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::validate;
    use crate::model::Payload;

    fn anchors(d: &Diagram) -> Vec<(AnchorRole, f64)> {
        d.elements()
            .values()
            .filter_map(|e| match e.payload() {
                Payload::TimeAnchor(a) => Some((a.role, a.t)),
                _ => None,
            })
            .collect()
    }

    fn event_span(d: &Diagram) -> Vec<f64> {
        anchors(d)
            .into_iter()
            .filter(|(r, _)| matches!(r, AnchorRole::Event | AnchorRole::EventStart | AnchorRole::EventEnd))
            .map(|(_, t)| t)
            .collect()
    }

    #[test]
    fn all_configurations_validate() {
        for tense in Tense::ALL {
            for aspect in Aspect::ALL {
                for c in Continuation::ALL {
                    let spec = AspectSpec::new(tense, aspect).with_continuation(c);
                    let d = build_aspect(spec, "Ken", "call");
                    assert!(validate(&d).is_empty(), "{}: {:?}", spec.name(), validate(&d));
                    assert!(anchors(&d).contains(&(AnchorRole::Now, 0.0)));
                }
            }
        }
    }

    #[test]
    fn past_simple_before_now() {
        let d = build_aspect(AspectSpec::new(Tense::Past, Aspect::Simple), "Ken", "call");
        assert!(event_span(&d).iter().all(|t| *t < 0.0));
        let d = build_aspect(AspectSpec::new(Tense::Past, Aspect::Progressive), "Ken", "call");
        assert!(event_span(&d).iter().all(|t| *t < 0.0));
        assert_eq!(event_span(&d).len(), 2);
    }

    #[test]
    fn present_perfect_reference_is_now() {
        let d = build_aspect(AspectSpec::new(Tense::Present, Aspect::Perfect), "Ken", "call");
        assert!(anchors(&d).contains(&(AnchorRole::Reference, 0.0)));
        for tense in Tense::ALL {
            let d = build_aspect(AspectSpec::new(tense, Aspect::Perfect), "Ken", "call");
            let reference = anchors(&d).into_iter().find(|(r, _)| *r == AnchorRole::Reference).unwrap().1;
            assert!(event_span(&d).iter().all(|t| *t < reference));
        }
    }

    #[test]
    fn both_splits_into_two_branches() {
        let spec = AspectSpec::parse("future-perfect-progressive-both").unwrap();
        assert_eq!(spec.continuation, Continuation::Both);
        let d = build_aspect(spec, "Ken", "work");
        let Some(Group::SplitTime(g)) = d.groups().values().next() else { panic!("no split") };
        assert_eq!(g.branches().len(), 2);
        let d = build_aspect(AspectSpec::new(Tense::Future, Aspect::PerfectProgressive), "Ken", "work");
        assert!(d.groups().is_empty());
    }

    #[test]
    fn parse_names() {
        for tense in Tense::ALL {
            for aspect in Aspect::ALL {
                let spec = AspectSpec::new(tense, aspect);
                assert_eq!(AspectSpec::parse(&format!("{}-{}", tense.name(), aspect.name())), Some(spec));
                assert_eq!(AspectSpec::parse(&spec.name()), Some(spec));
            }
        }
        assert_eq!(AspectSpec::parse("past-perfect-both"), None);
        assert_eq!(AspectSpec::parse("yesterday-simple"), None);
    }
}
