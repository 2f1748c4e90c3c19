//! Seeded generator of valid diagrams, for property tests and benchmarks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{
    AnchorRole, AttrName, AttributeBinding, CAPayload, Cap, CorrelationPayload, Diagram, Edge, EdgeKind, Element,
    ElementKind, Equation, Existence, Expr, ForceRole, Group, Id, Level, MotivationPayload, ObjectPayload, Op, Payload,
    Placement, Range, RelDirection, RobinsonCategory, RobinsonPayload, Slot, SplitTimeGroup, StateDiagramGroup,
    SwirlyCell, SwirlyPayload, TimeAnchorPayload, Triangular, Valence, Value, Wildcard,
};

const WORDS: &[&str] = &[
    "fox", "ball", "cup", "bottle", "Bob", "Grace", "snake", "men", "car", "rabbit", "water", "message", "1 + 2",
    "say \"hi\"", "back\\slash", "naïve", "two\nlines", "tab\there", "",
];

pub fn random_text<R: Rng>(rng: &mut R) -> String {
    if rng.gen_bool(0.8) {
        WORDS.choose(rng).map(|s| s.to_string()).unwrap_or_default()
    } else {
        let len = rng.gen_range(0..8);
        (0..len).map(|_| *['a', 'Z', ' ', '"', '\\', '=', '#', 'é', '→', '\n', '\r', '\t'].choose(rng).unwrap()).collect()
    }
}

pub fn random_number<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..5) {
        0 => rng.gen_range(-10..=10) as f64,
        1 => rng.gen_range(-1e6..1e6),
        2 => rng.gen_range(-1e-6..1e-6),
        3 => rng.gen::<f64>(),
        _ => rng.gen_range(-1e300..1e300),
    }
}

fn ordered_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    let (a, b) = (random_number(rng), random_number(rng));
    (a.min(b), a.max(b))
}

fn random_range<R: Rng>(rng: &mut R) -> Range {
    let (lo, hi) = ordered_pair(rng);
    let cap = |rng: &mut R| if rng.gen_bool(0.5) { Cap::Inclusive } else { Cap::Exclusive };
    let lo = rng.gen_bool(0.85).then_some(lo);
    let hi = rng.gen_bool(0.85).then_some(hi);
    Range::new(lo, hi, cap(rng), cap(rng)).expect("ordered bounds")
}

/// Any value variant, including every wildcard.
pub fn random_value<R: Rng>(rng: &mut R) -> Value {
    match rng.gen_range(0..8) {
        0 => Value::number(random_number(rng)),
        1 => Value::Scalar { value: random_number(rng), unit: Some(["kg", "m/s", "%"].choose(rng).unwrap().to_string()) },
        2 => Value::Text(random_text(rng)),
        3 => Value::ExistenceLevel(Existence::new(rng.gen::<f64>()).expect("unit interval")),
        4 => Value::Range(random_range(rng)),
        5 => Value::BallInRange(random_range(rng)),
        6 => {
            let mut p = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
            p.sort_by(f64::total_cmp);
            let name = ["few", "many", "most", "all"].choose(rng).unwrap().to_string();
            Value::FuzzyLabel { name, membership: Triangular::new(p[0], p[1], p[2]).expect("sorted") }
        }
        _ => Value::Wildcard(*Wildcard::ALL.choose(rng).unwrap()),
    }
}

fn attr_name<R: Rng>(rng: &mut R) -> AttrName {
    match rng.gen_range(0..12) {
        0 => AttrName::DontKnow,
        1 => AttrName::named("DK"),
        2 => AttrName::named("two words"),
        _ => AttrName::named(*["color", "speed", "weight", "mortality", "size", "owner-of", "x_1"].choose(rng).unwrap()),
    }
}

struct Builder<'r, R: Rng> {
    rng: &'r mut R,
    d: Diagram,
}

impl<R: Rng> Builder<'_, R> {
    fn label(&mut self) -> String {
        random_text(self.rng)
    }

    fn place(&mut self, e: Element, parent: Option<&Id>) -> Id {
        let needs_pos = parent.and_then(|p| self.d.element(p.as_str())).is_some_and(|p| p.kind().fixes_positions());
        let e = if needs_pos || self.rng.gen_bool(0.1) {
            let (x, y) = (self.rng.gen_range(0.0..500.0), self.rng.gen_range(0.0..500.0));
            let (w, h) = (self.rng.gen_range(0.0..100.0), self.rng.gen_range(0.0..100.0));
            e.with_position(Placement::new(x, y, w, h).expect("finite"))
        } else {
            e
        };
        self.d.add_element(e, parent).expect("generated element fits")
    }

    fn ids_of(&self, pred: impl Fn(ElementKind) -> bool) -> Vec<Id> {
        self.d.elements().iter().filter(|(_, e)| pred(e.kind())).map(|(id, _)| id.clone()).collect()
    }

    fn pick(&mut self, ids: &[Id]) -> Option<Id> {
        ids.choose(self.rng).cloned()
    }

    /// A box parent that `kind` may legally sit in.
    fn parent_for(&mut self, kind: ElementKind) -> Option<Id> {
        if self.rng.gen_bool(0.5) {
            return None;
        }
        let strict = kind.box_strictness().unwrap_or(u8::MAX);
        let ok: Vec<Id> = self
            .d
            .elements()
            .iter()
            .filter(|(_, e)| {
                let k = e.kind();
                k.is_container() && k != ElementKind::XorBox && k.box_strictness().is_none_or(|s| s <= strict)
            })
            .map(|(id, _)| id.clone())
            .collect();
        self.pick(&ok)
    }

    fn boxes(&mut self, n: usize) {
        for _ in 0..n {
            let kind = *[
                ElementKind::AggregationBox,
                ElementKind::DescriptiveBox,
                ElementKind::VerbatimBox,
                ElementKind::DataSetBox,
                ElementKind::CAAggregationBox,
                ElementKind::ZoomBoxPair,
            ]
            .choose(self.rng)
            .unwrap();
            let parent = self.parent_for(kind);
            let mut e = Element::labeled(kind, &self.label());
            if kind == ElementKind::DescriptiveBox {
                let constraints = (0..self.rng.gen_range(0..3)).map(|_| random_text(self.rng)).collect();
                e = e.with_payload(Payload::Descriptive { constraints }).expect("descriptive");
            }
            if kind == ElementKind::CAAggregationBox {
                e = e.with_payload(Payload::CA(self.ca())).expect("ca");
            }
            if kind == ElementKind::ZoomBoxPair && self.rng.gen_bool(0.5) {
                let factor = Some(self.rng.gen_range(0.5..10.0));
                e = e.with_payload(Payload::Zoom { zoom_of: None, factor }).expect("zoom");
            }
            self.place(e, parent.as_ref());
        }
    }

    fn ca(&mut self) -> CAPayload {
        let b = |rng: &mut R, n: &str| AttributeBinding::named(n, Value::number(random_number(rng))).unwrap();
        let forced = if self.rng.gen_bool(0.5) { vec![b(self.rng, "temp")] } else { vec![] };
        let detected = if self.rng.gen_bool(0.5) { vec![b(self.rng, "color"), b(self.rng, "size")] } else { vec![] };
        CAPayload::new(forced, detected, self.rng.gen_bool(0.3)).expect("disjoint")
    }

    fn objects(&mut self, n: usize) {
        for _ in 0..n {
            let kind = *[
                ElementKind::PhysicalObjectCircle,
                ElementKind::PhysicalObjectCircle,
                ElementKind::DataObjectCircle,
                ElementKind::CAObjectCircle,
                ElementKind::DataPoint,
            ]
            .choose(self.rng)
            .unwrap();
            let parent = self.parent_for(kind);
            let mut e = Element::labeled(kind, &self.label());
            match kind {
                ElementKind::PhysicalObjectCircle | ElementKind::DataObjectCircle => {
                    let bodies = self.ids_of(|k| k == ElementKind::PhysicalObjectCircle);
                    let mut o = ObjectPayload {
                        role: [None, Some(crate::model::GrammaticalRole::Subject), Some(crate::model::GrammaticalRole::DirectObject)]
                            .choose(self.rng)
                            .copied()
                            .flatten(),
                        ..ObjectPayload::default()
                    };
                    if kind == ElementKind::PhysicalObjectCircle && self.rng.gen_bool(0.2) {
                        if let Some(body) = self.pick(&bodies) {
                            o.appendage_of = Some(body);
                            o.appendage = Some(crate::model::AppendageKind::External);
                            o.end_effector = self.rng.gen_bool(0.5);
                        }
                    }
                    e = e.with_payload(Payload::Object(o)).expect("object");
                }
                ElementKind::CAObjectCircle => e = e.with_payload(Payload::CA(self.ca())).expect("ca"),
                _ => {}
            }
            let id = self.place(e, parent.as_ref());
            for _ in 0..self.rng.gen_range(0..3) {
                let b = AttributeBinding { attribute: attr_name(self.rng), value: random_value(self.rng) };
                if b.check().is_ok() {
                    let _ = self.d.bind_attribute(&id, b);
                }
            }
        }
    }

    fn xor_boxes(&mut self) {
        if self.rng.gen_bool(0.3) {
            let x = self.place(Element::labeled(ElementKind::XorBox, "or"), None);
            for _ in 0..self.rng.gen_range(2..4) {
                let e = Element::labeled(ElementKind::PhysicalObjectCircle, &self.label());
                self.place(e, Some(&x));
            }
        }
    }

    fn change_edges(&mut self, n: usize) {
        let ends = self.ids_of(|k| k.is_nonquan() || k == ElementKind::StateCircle);
        if ends.is_empty() {
            return;
        }
        for _ in 0..n {
            let a = self.pick(&ends);
            let b = self.pick(&ends);
            let edge = match self.rng.gen_range(0..4) {
                0 => Edge::solitary(EdgeKind::Time).unwrap(),
                1 => {
                    let e = match self.rng.gen_range(0..4) {
                        0 => Edge::new(EdgeKind::Motion, a.clone(), None),
                        1 => Edge::new(EdgeKind::Motion, a.clone(), a.clone()),
                        2 => Edge::new(EdgeKind::Motion, a.clone(), b.clone()),
                        _ => Edge::solitary(EdgeKind::Motion),
                    }
                    .unwrap();
                    if self.rng.gen_bool(0.3) {
                        e.with_moves(b.as_ref().unwrap()).unwrap()
                    } else {
                        e
                    }
                }
                2 => {
                    let (a2, b2) = if a == b { (a.clone(), None) } else { (a.clone(), b.clone()) };
                    let e = match self.rng.gen_range(0..3) {
                        0 => Edge::new(EdgeKind::Force, None, b2.or(a2)),
                        _ => Edge::new(EdgeKind::Force, a.clone(), if a == b { None } else { b.clone() }),
                    }
                    .unwrap();
                    if self.rng.gen_bool(0.5) {
                        e.with_role(ForceRole::ActedUpon).unwrap()
                    } else {
                        e
                    }
                }
                _ => {
                    let src = self.rng.gen_bool(0.8).then(|| a.clone()).flatten();
                    let dst = self.rng.gen_bool(0.8).then(|| b.clone()).flatten();
                    Edge::new(EdgeKind::Causation, src, dst).unwrap()
                }
            };
            let edge = if self.rng.gen_bool(0.3) { edge.with_label(&self.label()) } else { edge };
            let id = self.d.add_edge(edge).expect("known endpoints");
            if self.rng.gen_bool(0.3) {
                let v = random_value(self.rng);
                let _ = self.d.bind(&id, "speed", v);
            }
        }
    }

    fn relationships(&mut self) {
        let all: Vec<Id> = self.d.elements().keys().cloned().collect();
        for _ in 0..self.rng.gen_range(0..3) {
            let (Some(a), Some(b)) = (self.pick(&all), self.pick(&all)) else { return };
            let mut e = Edge::between(EdgeKind::Relationship, &a, &b).unwrap();
            if self.rng.gen_bool(0.5) {
                e = e.with_attribute("mortality").unwrap();
            }
            if self.rng.gen_bool(0.5) {
                e = e.with_direction(*[RelDirection::Forward, RelDirection::Both].choose(self.rng).unwrap()).unwrap();
            }
            self.d.add_edge(e).unwrap();
        }
    }

    fn state_diagram(&mut self) {
        let n = self.rng.gen_range(1..4);
        let states: Vec<Id> =
            (0..n)
            .map(|_| {
                let l = self.label();
                self.place(Element::labeled(ElementKind::StateCircle, &l), None)
            })
            .collect();
        let mut tubes = BTreeSet::new();
        for w in states.windows(2) {
            let t = Edge::between(EdgeKind::Tube, &w[0], &w[1]).unwrap().with_label(&self.label());
            tubes.insert(self.d.add_edge(t).unwrap());
        }
        let mut g = StateDiagramGroup::new(states.iter().cloned().collect(), tubes.clone());
        let spots: Vec<Id> = states.iter().chain(&tubes).cloned().collect();
        if self.rng.gen_bool(0.7) {
            let m = self.pick(&spots).unwrap();
            g = g.with_marker(&m);
        }
        let owners = self.ids_of(ElementKind::is_nonquan);
        if self.rng.gen_bool(0.3) {
            if let Some(o) = self.pick(&owners) {
                g = g.with_owner(&o);
            }
        }
        self.d.add_group(Group::StateDiagram(g)).unwrap();
    }

    fn split_time(&mut self) {
        let trunk = self.d.add_edge(Edge::solitary(EdgeKind::Time).unwrap()).unwrap();
        let j = self.place(Element::labeled(ElementKind::XorBox, "or"), None);
        let n = self.rng.gen_range(2..4);
        let branches: Vec<Id> = (0..n).map(|_| self.d.add_edge(Edge::solitary(EdgeKind::Time).unwrap()).unwrap()).collect();
        let probs = self.rng.gen_bool(0.5).then(|| {
            let mut p = vec![1.0 / n as f64; n];
            if n == 2 {
                p = vec![0.25, 0.75];
            }
            p
        });
        let g = SplitTimeGroup::new(trunk, branches, j, probs).expect("valid split");
        self.d.add_group(Group::SplitTime(g)).unwrap();
    }

    fn decorations(&mut self) {
        let times: Vec<Id> =
            self.d.edges().iter().filter(|(_, e)| e.kind() == EdgeKind::Time).map(|(id, _)| id.clone()).collect();
        if let Some(axis) = self.pick(&times) {
            let role = *AnchorRole::ALL.choose(self.rng).unwrap();
            let t = self.rng.gen_range(-3..=3) as f64;
            let p = Payload::TimeAnchor(TimeAnchorPayload { axis: Some(axis), t, role });
            self.place(Element::new(ElementKind::TimeAnchor).with_payload(p).unwrap(), None);
        }
        let data = self.ids_of(|k| k == ElementKind::DataObjectCircle);
        let ends = self.ids_of(ElementKind::is_nonquan);
        if let (Some(msg), Some(to)) = (self.pick(&data), self.pick(&ends)) {
            let m = self.d.add_edge(Edge::between(EdgeKind::Motion, &msg, &to).unwrap()).unwrap();
            let p = Payload::AttendRing { on: Some(m) };
            self.place(Element::new(ElementKind::AttendRing).with_payload(p).unwrap(), None);
        }
        let objects = self.ids_of(ElementKind::is_nonquan);
        if objects.len() >= 2 && self.rng.gen_bool(0.5) {
            let slots = vec![
                Slot { name: "w1".into(), owner: objects[0].clone(), attribute: "weight".into() },
                Slot { name: "w2".into(), owner: objects[1].clone(), attribute: "weight".into() },
            ];
            let t = self.rng.gen_range(1..200) as f64;
            let eqs = vec![
                Equation::new("w1", Expr::bin(Op::Sub, Expr::Num(t), Expr::slot("w2"))),
                Equation::new("w2", Expr::bin(Op::Sub, Expr::Num(t), Expr::slot("w1"))),
            ];
            let c = CorrelationPayload::new(slots, eqs).unwrap();
            self.place(Element::new(ElementKind::CorrelationBox).with_payload(Payload::Correlation(c)).unwrap(), None);
        }
        for _ in 0..self.rng.gen_range(0..4) {
            match self.rng.gen_range(0..9) {
                0 => {
                    let p = Payload::ValueBar { value: Some(random_value(self.rng)) };
                    self.place(Element::new(ElementKind::ValueBar).with_payload(p).unwrap(), None);
                }
                1 => {
                    let cells: Vec<SwirlyCell> = (0..self.rng.gen_range(1..5))
                        .map(|i| SwirlyCell { id: format!("c{i}"), x: random_number(self.rng), y: self.rng.gen_range(-5.0..5.0) })
                        .collect();
                    let active = cells.iter().filter(|_| self.rng.gen_bool(0.5)).map(|c| c.id.clone()).collect();
                    let p = Payload::Swirly(SwirlyPayload::new(cells, active).unwrap());
                    self.place(Element::new(ElementKind::SwirlyArray).with_payload(p).unwrap(), None);
                }
                2 => {
                    let owner = self.pick(&objects);
                    let attribute = owner.as_ref().filter(|_| self.rng.gen_bool(0.5)).map(|_| "color".to_string());
                    let p = Payload::Marker0D { owner, attribute };
                    self.place(Element::new(ElementKind::Marker0D).with_payload(p).unwrap(), None);
                }
                3 => {
                    let excludes = objects.iter().filter(|_| self.rng.gen_bool(0.2)).cloned().collect();
                    self.place(Element::new(ElementKind::Marker2D).with_payload(Payload::Marker2D { excludes }).unwrap(), None);
                }
                4 => {
                    let r = self.place(Element::new(ElementKind::RobinsonIcon), None);
                    let cats: BTreeSet<RobinsonCategory> =
                        RobinsonCategory::ALL.into_iter().filter(|_| self.rng.gen_bool(0.4)).collect();
                    let cathected =
                        if cats.contains(&RobinsonCategory::Cathected) { self.pick(&objects) } else { None };
                    let rp = RobinsonPayload::new(cats, Valence::Negative, Some("E2".into()), cathected).unwrap();
                    let markers = vec![(Level::Emotional, Valence::Positive), (Level::Physical, Valence::Negative)];
                    let m = MotivationPayload::new(markers, Some(r.clone())).unwrap();
                    self.place(Element::new(ElementKind::MotivationTriangle).with_payload(Payload::Motivation(m)).unwrap(), None);
                    let robinson = Element::new(ElementKind::RobinsonIcon).with_payload(Payload::Robinson(rp)).unwrap();
                    self.place(robinson, None);
                }
                5 => {
                    let p = Payload::ModalVerb { verb: Some("can".into()), meaning: Some("permission".into()) };
                    self.place(Element::new(ElementKind::ModalVerbIcon).with_payload(p).unwrap(), None);
                }
                6 => {
                    let k = *[ElementKind::Cell, ElementKind::SensorBar, ElementKind::Marker1D, ElementKind::LabelString]
                        .choose(self.rng)
                        .unwrap();
                    let e = Element::labeled(k, &self.label());
                    self.place(e, None);
                }
                _ => {}
            }
        }
        if self.rng.gen_bool(0.3) {
            self.d.set_meta("title", &random_text(self.rng));
        }
    }
}

/// A random diagram with roughly `size` elements that validates clean.
pub fn random_diagram<R: Rng>(rng: &mut R, size: usize) -> Diagram {
    let mut b = Builder { rng, d: Diagram::new() };
    let boxes = size / 4;
    b.boxes(boxes);
    b.objects(size.saturating_sub(boxes).max(1));
    b.xor_boxes();
    let n_edges = b.rng.gen_range(0..=size);
    b.change_edges(n_edges);
    b.relationships();
    if b.rng.gen_bool(0.4) {
        b.state_diagram();
    }
    if b.rng.gen_bool(0.3) {
        b.split_time();
    }
    b.decorations();
    b.d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::validate;
    use rand::SeedableRng;

    #[test]
    fn generated_diagrams_validate() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let size = rng.gen_range(0..12);
            let d = random_diagram(&mut rng, size);
            let v = validate(&d);
            assert!(v.is_empty(), "{v:?}\n{}", crate::dsl::serialize(&d));
        }
    }
}
