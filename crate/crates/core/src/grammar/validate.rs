use std::collections::BTreeSet;
use std::fmt;

use crate::model::{Diagram, EdgeKind, ElementKind, Group, Id, Payload, PROBABILITY_TOLERANCE};

use super::legality::{LegalityTable, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    TimeAttached,
    IllegalCombination,
    IllegalSelfLoop,
    EndpointNotNonquan,
    TubeEndpointNotState,
    IllegalAttributeHost,
    MultipleMarkers,
    TubeEndpointNotMember,
    GroupMemberInvalid,
    SplitProbability,
    SplitBranchNotTime,
    SplitJunctionNotXor,
    IllegalNesting,
    XorTooFewAlternatives,
    AttendNotData,
    AttendDetached,
    AnchorNotOnTime,
    PositionRequired,
    DanglingReference,
}

impl ViolationCode {
    pub const ALL: [ViolationCode; 19] = [
        ViolationCode::TimeAttached,
        ViolationCode::IllegalCombination,
        ViolationCode::IllegalSelfLoop,
        ViolationCode::EndpointNotNonquan,
        ViolationCode::TubeEndpointNotState,
        ViolationCode::IllegalAttributeHost,
        ViolationCode::MultipleMarkers,
        ViolationCode::TubeEndpointNotMember,
        ViolationCode::GroupMemberInvalid,
        ViolationCode::SplitProbability,
        ViolationCode::SplitBranchNotTime,
        ViolationCode::SplitJunctionNotXor,
        ViolationCode::IllegalNesting,
        ViolationCode::XorTooFewAlternatives,
        ViolationCode::AttendNotData,
        ViolationCode::AttendDetached,
        ViolationCode::AnchorNotOnTime,
        ViolationCode::PositionRequired,
        ViolationCode::DanglingReference,
    ];

    pub fn as_str(self) -> &'static str {
        use ViolationCode::*;
        match self {
            TimeAttached => "TIME_ATTACHED",
            IllegalCombination => "ILLEGAL_COMBINATION",
            IllegalSelfLoop => "ILLEGAL_SELF_LOOP",
            EndpointNotNonquan => "ENDPOINT_NOT_NONQUAN",
            TubeEndpointNotState => "TUBE_ENDPOINT_NOT_STATE",
            IllegalAttributeHost => "ILLEGAL_ATTRIBUTE_HOST",
            MultipleMarkers => "MULTIPLE_MARKERS",
            TubeEndpointNotMember => "TUBE_ENDPOINT_NOT_MEMBER",
            GroupMemberInvalid => "GROUP_MEMBER_INVALID",
            SplitProbability => "SPLIT_PROBABILITY",
            SplitBranchNotTime => "SPLIT_BRANCH_NOT_TIME",
            SplitJunctionNotXor => "SPLIT_JUNCTION_NOT_XOR",
            IllegalNesting => "ILLEGAL_NESTING",
            XorTooFewAlternatives => "XOR_TOO_FEW_ALTERNATIVES",
            AttendNotData => "ATTEND_NOT_DATA",
            AttendDetached => "ATTEND_DETACHED",
            AnchorNotOnTime => "ANCHOR_NOT_ON_TIME",
            PositionRequired => "POSITION_REQUIRED",
            DanglingReference => "DANGLING_REFERENCE",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub code: ViolationCode,
    pub ids: Vec<Id>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<&str> = self.ids.iter().map(Id::as_str).collect();
        write!(f, "{} [{}] {}", self.code, ids.join(","), self.message)
    }
}

struct Sink(Vec<Violation>);

impl Sink {
    fn push(&mut self, code: ViolationCode, ids: &[&Id], message: String) {
        self.0.push(Violation { code, ids: ids.iter().map(|i| (*i).clone()).collect(), message });
    }
}

/// Validates against the shipped legality table.
pub fn validate(d: &Diagram) -> Vec<Violation> {
    validate_with(d, &LegalityTable::default())
}

/// All grammar violations in `d`, sorted.
pub fn validate_with(d: &Diagram, table: &LegalityTable) -> Vec<Violation> {
    let mut out = Sink(Vec::new());
    check_edges(d, table, &mut out);
    check_solitary_nonquans(d, table, &mut out);
    check_attribute_hosts(d, &mut out);
    check_groups(d, &mut out);
    check_containment(d, &mut out);
    check_payloads(d, &mut out);
    let mut v = out.0;
    v.sort();
    v
}

fn check_edges(d: &Diagram, table: &LegalityTable, out: &mut Sink) {
    for (id, e) in d.edges() {
        let kind = e.kind();
        if !kind.is_change() {
            if kind == EdgeKind::Tube {
                for end in e.endpoints() {
                    if d.element(end.as_str()).map(|x| x.kind()) != Some(ElementKind::StateCircle) {
                        out.push(
                            ViolationCode::TubeEndpointNotState,
                            &[id, end],
                            format!("tube {id} ends at {end}, which is not a State Circle"),
                        );
                    }
                }
            }
            continue;
        }
        let ends: BTreeSet<&Id> = e.endpoints().collect();
        for end in ends {
            let k = d.element(end.as_str()).map(|x| x.kind());
            if !matches!(k, Some(k) if k.is_nonquan() || k == ElementKind::StateCircle) {
                out.push(
                    ViolationCode::EndpointNotNonquan,
                    &[id, end],
                    format!("{kind} arrow {id} touches {end}, which is not a Nonquan"),
                );
            }
        }
        let shape = Shape::of_endpoints(e.source().map(Id::as_str), e.target().map(Id::as_str));
        if table.is_legal(shape, kind) == Some(false) {
            let code = if kind == EdgeKind::Time && shape != Shape::SolitaryArrow {
                ViolationCode::TimeAttached
            } else if shape == Shape::SelfLoop {
                ViolationCode::IllegalSelfLoop
            } else {
                ViolationCode::IllegalCombination
            };
            out.push(code, &[id], format!("{kind} arrow {id} in shape {shape} is not a legal combination"));
        }
    }
}

fn check_solitary_nonquans(d: &Diagram, table: &LegalityTable, out: &mut Sink) {
    if EdgeKind::CHANGE.iter().all(|k| table.is_legal(Shape::SolitaryNonquan, *k) == Some(true)) {
        return;
    }
    let touched: BTreeSet<&Id> = d.edges().values().filter(|e| e.kind().is_change()).flat_map(|e| e.endpoints()).collect();
    for (id, e) in d.elements() {
        if e.kind().is_nonquan() && !touched.contains(id) {
            out.push(ViolationCode::IllegalCombination, &[id], format!("solitary Nonquan {id} is not allowed"));
        }
    }
}

fn check_attribute_hosts(d: &Diagram, out: &mut Sink) {
    for owner in d.bindings().keys() {
        if d.can_host_attributes(owner) != Some(true) {
            out.push(
                ViolationCode::IllegalAttributeHost,
                &[owner],
                format!("{owner} carries attributes but is neither a Nonquan nor a change arrow"),
            );
        }
    }
}

fn check_groups(d: &Diagram, out: &mut Sink) {
    for (gid, g) in d.groups() {
        match g {
            Group::StateDiagram(s) => {
                for st in &s.states {
                    if d.element(st.as_str()).map(|e| e.kind()) != Some(ElementKind::StateCircle) {
                        out.push(ViolationCode::GroupMemberInvalid, &[gid, st], format!("{st} is not a State Circle"));
                    }
                }
                for t in &s.tubes {
                    match d.edge(t.as_str()) {
                        Some(e) if e.kind() == EdgeKind::Tube => {
                            for end in e.endpoints() {
                                if !s.states.contains(end) {
                                    out.push(
                                        ViolationCode::TubeEndpointNotMember,
                                        &[gid, t, end],
                                        format!("tube {t} reaches {end}, outside state diagram {gid}"),
                                    );
                                }
                            }
                        }
                        _ => out.push(ViolationCode::GroupMemberInvalid, &[gid, t], format!("{t} is not a tube")),
                    }
                }
                if let Some(m) = &s.marker {
                    if !s.states.contains(m) && !s.tubes.contains(m) {
                        out.push(
                            ViolationCode::GroupMemberInvalid,
                            &[gid, m],
                            format!("marker of {gid} sits on {m}, which is not a member"),
                        );
                    }
                }
                if let Some(o) = &s.owner {
                    if d.element(o.as_str()).is_none() {
                        out.push(ViolationCode::GroupMemberInvalid, &[gid, o], format!("owner {o} is not an element"));
                    }
                }
                let placed: Vec<&Id> = d
                    .elements()
                    .iter()
                    .filter(|(_, e)| {
                        matches!(e.payload(), Payload::Marker0D { owner: Some(o), attribute: None } if s.states.contains(o) || s.tubes.contains(o))
                    })
                    .map(|(id, _)| id)
                    .collect();
                let total = placed.len() + usize::from(s.marker.is_some());
                if total > 1 {
                    let mut ids = vec![gid];
                    ids.extend(placed);
                    out.push(
                        ViolationCode::MultipleMarkers,
                        &ids,
                        format!("state diagram {gid} has {total} markers; at most one is allowed"),
                    );
                }
            }
            Group::SplitTime(s) => {
                for e in std::iter::once(s.trunk()).chain(s.branches()) {
                    if d.edge(e.as_str()).map(|x| x.kind()) != Some(EdgeKind::Time) {
                        out.push(ViolationCode::SplitBranchNotTime, &[gid, e], format!("{e} is not a Time edge"));
                    }
                }
                let j = s.junction();
                if d.element(j.as_str()).map(|x| x.kind()) != Some(ElementKind::XorBox) {
                    out.push(ViolationCode::SplitJunctionNotXor, &[gid, j], format!("junction {j} is not an XOR Box"));
                }
                if let Some(p) = s.probabilities() {
                    let sum: f64 = p.iter().sum();
                    if p.len() != s.branches().len()
                        || p.iter().any(|x| !(0.0..=1.0).contains(x))
                        || (sum - 1.0).abs() > PROBABILITY_TOLERANCE
                    {
                        out.push(
                            ViolationCode::SplitProbability,
                            &[gid],
                            format!("branch probabilities of {gid} do not form a distribution"),
                        );
                    }
                }
            }
        }
    }
}

fn check_containment(d: &Diagram, out: &mut Sink) {
    for (child, parent) in d.containment() {
        let (Some(c), Some(p)) = (d.element(child.as_str()), d.element(parent.as_str())) else {
            continue;
        };
        if let (Some(cs), Some(ps)) = (c.kind().box_strictness(), p.kind().box_strictness()) {
            if cs < ps {
                out.push(
                    ViolationCode::IllegalNesting,
                    &[child, parent],
                    format!("{} {child} is looser than the {} {parent} around it", c.kind(), p.kind()),
                );
            }
        }
        if p.kind().fixes_positions() && c.position().is_none() {
            out.push(
                ViolationCode::PositionRequired,
                &[child, parent],
                format!("{child} sits in {} {parent} without a fixed position", p.kind()),
            );
        }
    }
    let junctions: BTreeSet<&Id> = d
        .groups()
        .values()
        .filter_map(|g| match g {
            Group::SplitTime(s) if s.branches().len() >= 2 => Some(s.junction()),
            _ => None,
        })
        .collect();
    for (id, e) in d.elements() {
        if e.kind() == ElementKind::XorBox && d.children(id.as_str()).count() < 2 && !junctions.contains(id) {
            out.push(ViolationCode::XorTooFewAlternatives, &[id], format!("XOR Box {id} offers fewer than two alternatives"));
        }
    }
}

fn check_payloads(d: &Diagram, out: &mut Sink) {
    for (id, e) in d.elements() {
        for r in e.payload().refs() {
            if !d.contains_id(r.as_str()) {
                out.push(ViolationCode::DanglingReference, &[id, r], format!("{id} refers to missing {r}"));
            }
        }
        match e.payload() {
            Payload::AttendRing { on: None } => {
                out.push(ViolationCode::AttendDetached, &[id], format!("Attend Ring {id} decorates no edge"))
            }
            Payload::AttendRing { on: Some(on) } => match d.edge(on.as_str()) {
                Some(m) if m.kind() == EdgeKind::Motion => {
                    let moved = m.moves().or(m.source());
                    let is_data = moved
                        .and_then(|x| d.element(x.as_str()))
                        .is_some_and(|x| x.kind() == ElementKind::DataObjectCircle);
                    if !is_data {
                        out.push(
                            ViolationCode::AttendNotData,
                            &[id, on],
                            format!("Attend Ring {id} sits on {on}, which does not move a message"),
                        );
                    }
                }
                Some(_) => out.push(
                    ViolationCode::AttendDetached,
                    &[id, on],
                    format!("Attend Ring {id} sits on {on}, which is not a Motion edge"),
                ),
                None => {}
            },
            Payload::TimeAnchor(a) => {
                if let Some(ax) = &a.axis {
                    if let Some(edge) = d.edge(ax.as_str()) {
                        if edge.kind() != EdgeKind::Time {
                            out.push(ViolationCode::AnchorNotOnTime, &[id, ax], format!("{ax} is not a Time edge"));
                        }
                    } else if d.contains_id(ax.as_str()) {
                        out.push(ViolationCode::AnchorNotOnTime, &[id, ax], format!("{ax} is not a Time edge"));
                    }
                }
            }
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Edge, Element, Placement, StateDiagramGroup, TimeAnchorPayload, AnchorRole};

    fn id(s: &str) -> Id {
        Id::new(s).unwrap()
    }

    fn codes(d: &Diagram) -> Vec<ViolationCode> {
        validate(d).into_iter().map(|v| v.code).collect()
    }

    fn person(d: &mut Diagram, name: &str) -> Id {
        let i = id(name);
        d.insert_element(i.clone(), Element::labeled(ElementKind::PhysicalObjectCircle, name), None).unwrap();
        i
    }

    #[test]
    fn time_into_circle() {
        let mut d = Diagram::new();
        let o = person(&mut d, "o");
        d.add_edge(Edge::new(EdgeKind::Time, None, Some(o)).unwrap()).unwrap();
        assert_eq!(codes(&d), [ViolationCode::TimeAttached]);
    }

    #[test]
    fn reflexive_motion_is_fine() {
        let mut d = Diagram::new();
        let o = person(&mut d, "me");
        d.add_edge(Edge::between(EdgeKind::Motion, &o, &o).unwrap()).unwrap();
        assert!(validate(&d).is_empty());
    }

    #[test]
    fn attend_ring_on_physical_motion() {
        let mut d = Diagram::new();
        let a = person(&mut d, "a");
        let b = person(&mut d, "b");
        let m = d.add_edge(Edge::between(EdgeKind::Motion, &a, &b).unwrap()).unwrap();
        d.add_element(Element::new(ElementKind::AttendRing).with_payload(Payload::AttendRing { on: Some(m) }).unwrap(), None)
            .unwrap();
        assert_eq!(codes(&d), [ViolationCode::AttendNotData]);
    }

    #[test]
    fn endpoint_must_be_nonquan() {
        let mut d = Diagram::new();
        let a = person(&mut d, "a");
        let v = d.add_element(Element::new(ElementKind::ValueBar), None).unwrap();
        d.add_edge(Edge::between(EdgeKind::Causation, &a, &v).unwrap()).unwrap();
        assert_eq!(codes(&d), [ViolationCode::EndpointNotNonquan]);
    }

    #[test]
    fn nesting_order() {
        let mut d = Diagram::new();
        let v = d.add_element(Element::new(ElementKind::VerbatimBox), None).unwrap();
        d.add_element(Element::new(ElementKind::AggregationBox).with_position(Placement::new(0.0, 0.0, 1.0, 1.0).unwrap()), Some(&v))
            .unwrap();
        assert_eq!(codes(&d), [ViolationCode::IllegalNesting]);

        let mut ok = Diagram::new();
        let a = ok.add_element(Element::new(ElementKind::AggregationBox), None).unwrap();
        ok.add_element(Element::new(ElementKind::DescriptiveBox), Some(&a)).unwrap();
        assert!(validate(&ok).is_empty());
    }

    #[test]
    fn verbatim_contents_need_positions() {
        let mut d = Diagram::new();
        let v = d.add_element(Element::new(ElementKind::VerbatimBox), None).unwrap();
        d.add_element(Element::new(ElementKind::DataPoint), Some(&v)).unwrap();
        assert_eq!(codes(&d), [ViolationCode::PositionRequired]);
    }

    #[test]
    fn xor_needs_two_alternatives() {
        let mut d = Diagram::new();
        let x = d.add_element(Element::new(ElementKind::XorBox), None).unwrap();
        d.add_element(Element::new(ElementKind::PhysicalObjectCircle), Some(&x)).unwrap();
        assert_eq!(codes(&d), [ViolationCode::XorTooFewAlternatives]);
        d.add_element(Element::new(ElementKind::PhysicalObjectCircle), Some(&x)).unwrap();
        assert!(validate(&d).is_empty());
    }

    #[test]
    fn state_diagram_markers() {
        let mut d = Diagram::new();
        for s in ["on", "off"] {
            d.insert_element(id(s), Element::labeled(ElementKind::StateCircle, s), None).unwrap();
        }
        d.insert_edge(id("t1"), Edge::between(EdgeKind::Tube, &id("on"), &id("off")).unwrap()).unwrap();
        let g = StateDiagramGroup::new([id("on"), id("off")].into(), [id("t1")].into()).with_marker(&id("on"));
        d.insert_group(id("g"), Group::StateDiagram(g)).unwrap();
        assert!(validate(&d).is_empty());
        let second = Element::new(ElementKind::Marker0D)
            .with_payload(Payload::Marker0D { owner: Some(id("off")), attribute: None })
            .unwrap();
        d.add_element(second, None).unwrap();
        assert_eq!(codes(&d), [ViolationCode::MultipleMarkers]);
    }

    #[test]
    fn tube_outside_group() {
        let mut d = Diagram::new();
        for s in ["a", "b", "c"] {
            d.insert_element(id(s), Element::new(ElementKind::StateCircle), None).unwrap();
        }
        d.insert_edge(id("t"), Edge::between(EdgeKind::Tube, &id("a"), &id("c")).unwrap()).unwrap();
        let g = StateDiagramGroup::new([id("a"), id("b")].into(), [id("t")].into());
        d.insert_group(id("g"), Group::StateDiagram(g)).unwrap();
        assert_eq!(codes(&d), [ViolationCode::TubeEndpointNotMember]);
    }

    #[test]
    fn dangling_and_off_axis_anchor() {
        let mut d = Diagram::new();
        let a = person(&mut d, "a");
        let m = d.add_edge(Edge::new(EdgeKind::Motion, Some(a), None).unwrap()).unwrap();
        let anchor = |axis: &str| {
            Element::new(ElementKind::TimeAnchor)
                .with_payload(Payload::TimeAnchor(TimeAnchorPayload { axis: Some(id(axis)), t: 0.0, role: AnchorRole::Now }))
                .unwrap()
        };
        d.add_element(anchor("ghost"), None).unwrap();
        d.add_element(anchor(m.as_str()), None).unwrap();
        assert_eq!(codes(&d), [ViolationCode::AnchorNotOnTime, ViolationCode::DanglingReference]);
    }

    #[test]
    fn idempotent() {
        let mut d = Diagram::new();
        let o = person(&mut d, "o");
        d.add_edge(Edge::new(EdgeKind::Time, Some(o.clone()), Some(o)).unwrap()).unwrap();
        assert_eq!(validate(&d), validate(&d));
    }
}
