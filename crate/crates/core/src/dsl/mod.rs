//! Line-oriented text format for diagrams.
//!
//! ```text
//! # the quick, brown fox
//! elem fox PhysicalObjectCircle label="fox"
//! attr fox speed="quick"
//! attr fox color="brown"
//! ```
//!
//! Records are `meta`, `elem`, `contain`, `edge`, `group` and `attr`.
//! [`serialize`] writes them in a canonical order so that
//! `serialize(parse(text)) == text` for canonical text.

mod cursor;
mod payload;

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{
    fmt_number, quote, AttrName, AttributeBinding, Diagram, Edge, EdgeKind, ElementKind, ForceRole, Group, Id,
    ModelError, RelDirection, SplitTimeGroup, StateDiagramGroup, Value,
};

use cursor::{Cursor, PResult};
use payload::KeyValue;

/// Position of a problem in the input; lines and columns are 1-based and
/// columns count characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.start)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: expected {expected}, found {found}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

enum Record {
    Meta { key: String, value: String, span: SourceSpan },
    Elem { id: Id, kind: ElementKind, kvs: Vec<KeyValue>, span: SourceSpan },
    Contain { child: Id, parent: Id, span: SourceSpan },
    Edge { id: Id, edge: Edge, span: SourceSpan },
    Group { id: Id, kind: GroupKind, fields: GroupFields, span: SourceSpan },
    Attr { owner: Id, binding: AttributeBinding, span: SourceSpan },
}

#[derive(Clone, Copy)]
enum GroupKind {
    StateDiagram,
    SplitTime,
}

#[derive(Default)]
struct GroupFields {
    members: Vec<Id>,
    marker: Option<Id>,
    owner: Option<Id>,
    junction: Option<Id>,
    probs: Option<Vec<f64>>,
}

/// Parses raw bytes; invalid UTF-8 is reported as a parse error.
pub fn parse_bytes(bytes: &[u8]) -> Result<Diagram, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse(s),
        Err(e) => {
            let good = &bytes[..e.valid_up_to()];
            let line = good.iter().filter(|b| **b == b'\n').count() + 1;
            let line_start = good.iter().rposition(|b| *b == b'\n').map_or(0, |p| p + 1);
            let col = String::from_utf8_lossy(&good[line_start..]).chars().count() + 1;
            Err(ParseError {
                span: SourceSpan { line, start: col, end: col + 1 },
                expected: "UTF-8 text".into(),
                found: format!("byte 0x{:02x}", bytes[e.valid_up_to()]),
            })
        }
    }
}

pub fn parse(text: &str) -> Result<Diagram, ParseError> {
    let mut records = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim_start_matches([' ', '\t']);
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        records.push(parse_line(line, i + 1)?);
    }
    build(records)
}

fn model_error(span: SourceSpan, expected: &str, e: ModelError) -> ParseError {
    ParseError { span, expected: expected.to_string(), found: e.to_string() }
}

fn parse_id(c: &mut Cursor<'_>, what: &str) -> PResult<(Id, SourceSpan)> {
    let (w, span) = c.expect_word(what)?;
    let id = Id::new(w).map_err(|_| ParseError { span, expected: what.to_string(), found: format!("{w:?}") })?;
    Ok((id, span))
}

fn parse_line(line: &str, line_no: usize) -> PResult<Record> {
    let mut c = Cursor::new(line, line_no);
    c.skip_ws();
    let start = c.pos();
    let (keyword, kw_span) = c.expect_word("record keyword")?;
    let rec = match keyword {
        "meta" => {
            c.skip_ws();
            let key = if c.peek() == Some('"') { c.string()? } else { c.expect_word("meta key")?.0.to_string() };
            c.expect('=')?;
            let value = c.string()?;
            Record::Meta { key, value, span: c.span_from(start) }
        }
        "elem" => {
            let (id, _) = parse_id(&mut c, "element id")?;
            let (kname, kspan) = c.expect_word("element kind")?;
            let kind = ElementKind::from_name(kname).ok_or_else(|| ParseError {
                span: kspan,
                expected: "element kind".into(),
                found: format!("{kname:?}"),
            })?;
            let kvs = key_values(&mut c)?;
            Record::Elem { id, kind, kvs, span: c.span_from(start) }
        }
        "contain" => {
            let (child, _) = parse_id(&mut c, "child id")?;
            let (parent, _) = parse_id(&mut c, "parent id")?;
            Record::Contain { child, parent, span: c.span_from(start) }
        }
        "edge" => {
            let (id, _) = parse_id(&mut c, "edge id")?;
            let (kname, kspan) = c.expect_word("edge kind")?;
            let kind = EdgeKind::from_name(kname).ok_or_else(|| ParseError {
                span: kspan,
                expected: "edge kind".into(),
                found: format!("{kname:?}"),
            })?;
            c.skip_ws();
            let source = if c.rest().starts_with("->") { None } else { Some(parse_id(&mut c, "source id or '->'")?.0) };
            c.skip_ws();
            if !c.eat_str("->") {
                return Err(c.error("'->'"));
            }
            c.skip_ws();
            let target = if endpoint_follows(c.rest()) { Some(parse_id(&mut c, "target id")?.0) } else { None };
            let kvs = key_values(&mut c)?;
            let span = c.span_from(start);
            let edge = edge_from(kind, source, target, kvs, span)?;
            Record::Edge { id, edge, span }
        }
        "attr" => {
            let (owner, _) = parse_id(&mut c, "owner id")?;
            c.skip_ws();
            let attribute = if c.peek() == Some('"') {
                AttrName::Named(c.string()?)
            } else {
                match c.expect_word("attribute name")?.0 {
                    "DK" => AttrName::DontKnow,
                    w => AttrName::Named(w.to_string()),
                }
            };
            c.expect('=')?;
            let vstart = c.pos();
            let value = c.value()?;
            let binding =
                AttributeBinding::new(attribute, value).map_err(|e| model_error(c.span_from(vstart), "binding", e))?;
            Record::Attr { owner, binding, span: c.span_from(start) }
        }
        "group" => {
            let (id, _) = parse_id(&mut c, "group id")?;
            let (kname, kspan) = c.expect_word("group kind")?;
            let kind = match kname {
                "StateDiagram" => GroupKind::StateDiagram,
                "SplitTime" => GroupKind::SplitTime,
                _ => {
                    return Err(ParseError {
                        span: kspan,
                        expected: "StateDiagram or SplitTime".into(),
                        found: format!("{kname:?}"),
                    })
                }
            };
            let fields = group_fields(&mut c)?;
            Record::Group { id, kind, fields, span: c.span_from(start) }
        }
        _ => {
            return Err(ParseError {
                span: kw_span,
                expected: "meta, elem, contain, edge, group or attr".into(),
                found: format!("{keyword:?}"),
            })
        }
    };
    if !c.at_end() {
        return Err(c.error("end of line"));
    }
    Ok(rec)
}

/// After `->`, an id is a target unless it is the key of a `key=value`.
fn endpoint_follows(rest: &str) -> bool {
    let word: String = rest.chars().take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')).collect();
    !word.is_empty() && !rest[word.len()..].starts_with('=')
}

fn key_values(c: &mut Cursor<'_>) -> PResult<Vec<KeyValue>> {
    let mut out = Vec::new();
    while !c.at_end() {
        let start = c.pos();
        let (key, _) = c.expect_word("key")?;
        c.expect('=')?;
        let value = c.value()?;
        out.push(KeyValue { key: key.to_string(), value, span: c.span_from(start) });
    }
    Ok(out)
}

fn edge_from(
    kind: EdgeKind,
    source: Option<Id>,
    target: Option<Id>,
    kvs: Vec<KeyValue>,
    span: SourceSpan,
) -> PResult<Edge> {
    let mut edge = Edge::new(kind, source, target).map_err(|e| model_error(span, "edge endpoints", e))?;
    let mut seen = BTreeSet::new();
    for kv in kvs {
        if !seen.insert(kv.key.clone()) {
            return Err(ParseError { span: kv.span, expected: format!("a single {}", kv.key), found: "repeat".into() });
        }
        let Value::Text(t) = &kv.value else {
            return Err(ParseError { span: kv.span, expected: "quoted text".into(), found: kv.value.to_string() });
        };
        let bad = |what: &str| ParseError { span: kv.span, expected: what.to_string(), found: format!("{t:?}") };
        edge = match kv.key.as_str() {
            "label" => Ok(edge.with_label(t)),
            "role" => edge.with_role(ForceRole::from_keyword(t).ok_or_else(|| bad("exerts or acted_upon"))?),
            "direction" => {
                edge.with_direction(RelDirection::from_keyword(t).ok_or_else(|| bad("forward, backward or both"))?)
            }
            "moves" => edge.with_moves(&Id::new(t.clone()).map_err(|_| bad("element id"))?),
            "attribute" => edge.with_attribute(t),
            _ => return Err(ParseError { span: kv.span, expected: "edge key".into(), found: format!("{:?}", kv.key) }),
        }
        .map_err(|e| model_error(kv.span, "edge field", e))?;
    }
    Ok(edge)
}

fn group_fields(c: &mut Cursor<'_>) -> PResult<GroupFields> {
    let mut g = GroupFields::default();
    let mut seen = BTreeSet::new();
    while !c.at_end() {
        let start = c.pos();
        let (key, kspan) = c.expect_word("group key")?;
        if !seen.insert(key) {
            return Err(ParseError { span: kspan, expected: format!("a single {key}"), found: "repeat".into() });
        }
        c.expect('=')?;
        let raw = c.token();
        let span = c.span_from(start);
        let ids = |s: &str| -> PResult<Vec<Id>> {
            s.split(',')
                .filter(|p| !p.is_empty())
                .map(|p| Id::new(p).map_err(|_| ParseError { span, expected: "id".into(), found: format!("{p:?}") }))
                .collect()
        };
        let one = |s: &str| -> PResult<Id> {
            Id::new(s).map_err(|_| ParseError { span, expected: "id".into(), found: format!("{s:?}") })
        };
        match key {
            "members" => g.members = ids(raw)?,
            "marker" => g.marker = Some(one(raw)?),
            "owner" => g.owner = Some(one(raw)?),
            "junction" => g.junction = Some(one(raw)?),
            "probs" => {
                let mut ps = Vec::new();
                for p in raw.split(',').filter(|p| !p.is_empty()) {
                    match p.parse::<f64>() {
                        Ok(x) if x.is_finite() => ps.push(x),
                        _ => return Err(ParseError { span, expected: "probability".into(), found: format!("{p:?}") }),
                    }
                }
                g.probs = Some(ps);
            }
            _ => return Err(ParseError { span: kspan, expected: "group key".into(), found: format!("{key:?}") }),
        }
    }
    Ok(g)
}

fn build(records: Vec<Record>) -> Result<Diagram, ParseError> {
    let mut d = Diagram::new();
    let mut meta_seen = BTreeSet::new();
    for r in &records {
        match r {
            Record::Meta { key, value, span } => {
                if !meta_seen.insert(key.clone()) {
                    return Err(ParseError { span: *span, expected: "unique meta key".into(), found: format!("{key:?}") });
                }
                d.set_meta(key, value);
            }
            Record::Elem { id, kind, kvs, span } => {
                let kvs = kvs.iter().map(|kv| KeyValue { key: kv.key.clone(), value: kv.value.clone(), span: kv.span });
                let e = payload::decode(*kind, kvs.collect(), *span)
                    .map_err(|(span, expected, found)| ParseError { span, expected, found })?;
                d.insert_element(id.clone(), e, None).map_err(|e| model_error(*span, "unique id", e))?;
            }
            _ => {}
        }
    }
    for r in &records {
        if let Record::Contain { child, parent, span } = r {
            d.set_parent(child, parent).map_err(|e| model_error(*span, "valid containment", e))?;
        }
    }
    for r in &records {
        if let Record::Edge { id, edge, span } = r {
            d.insert_edge(id.clone(), edge.clone()).map_err(|e| model_error(*span, "edge between known elements", e))?;
        }
    }
    for r in &records {
        if let Record::Group { id, kind, fields, span } = r {
            let g = group_from(&d, *kind, fields).map_err(|e| model_error(*span, "valid group", e))?;
            d.insert_group(id.clone(), g).map_err(|e| model_error(*span, "valid group", e))?;
        }
    }
    for r in records {
        if let Record::Attr { owner, binding, span } = r {
            d.bind_attribute(&owner, binding).map_err(|e| model_error(span, "legal binding", e))?;
        }
    }
    Ok(d)
}

fn group_from(d: &Diagram, kind: GroupKind, f: &GroupFields) -> Result<Group, ModelError> {
    match kind {
        GroupKind::StateDiagram => {
            if f.junction.is_some() || f.probs.is_some() {
                return Err(ModelError::InvalidGroup("state diagrams take members, marker and owner".into()));
            }
            let (tubes, states): (BTreeSet<Id>, BTreeSet<Id>) =
                f.members.iter().cloned().partition(|m| d.edge(m.as_str()).is_some());
            if states.len() + tubes.len() != f.members.len() {
                return Err(ModelError::InvalidGroup("repeated member".into()));
            }
            let mut g = StateDiagramGroup::new(states, tubes);
            g.marker = f.marker.clone();
            g.owner = f.owner.clone();
            Ok(Group::StateDiagram(g))
        }
        GroupKind::SplitTime => {
            if f.marker.is_some() || f.owner.is_some() {
                return Err(ModelError::InvalidGroup("split time groups take members, junction and probs".into()));
            }
            let (trunk, branches) =
                f.members.split_first().ok_or_else(|| ModelError::InvalidGroup("missing trunk".into()))?;
            let junction = f.junction.clone().ok_or_else(|| ModelError::InvalidGroup("missing junction".into()))?;
            Ok(Group::SplitTime(SplitTimeGroup::new(trunk.clone(), branches.to_vec(), junction, f.probs.clone())?))
        }
    }
}

fn is_plain_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        && s != "DK"
}

fn name_text(s: &str) -> String {
    if is_plain_name(s) {
        s.to_string()
    } else {
        quote(s)
    }
}

/// Canonical text form.
pub fn serialize(d: &Diagram) -> String {
    let mut out = String::new();
    for (k, v) in d.meta() {
        let _ = writeln!(out, "meta {}={}", name_text(k), quote(v));
    }
    for (id, e) in d.elements() {
        let _ = write!(out, "elem {id} {}", e.kind());
        for (k, v) in payload::encode(e) {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
    }
    for (child, parent) in d.containment() {
        let _ = writeln!(out, "contain {child} {parent}");
    }
    for (id, e) in d.edges() {
        let _ = write!(out, "edge {id} {}", e.kind());
        if let Some(s) = e.source() {
            let _ = write!(out, " {s}");
        }
        out.push_str(" ->");
        if let Some(t) = e.target() {
            let _ = write!(out, " {t}");
        }
        if let Some(r) = e.role() {
            let _ = write!(out, " role={}", quote(r.keyword()));
        }
        if let Some(dir) = e.direction() {
            let _ = write!(out, " direction={}", quote(dir.keyword()));
        }
        if let Some(m) = e.moves() {
            let _ = write!(out, " moves={}", quote(m.as_str()));
        }
        if let Some(a) = e.attribute() {
            let _ = write!(out, " attribute={}", quote(a));
        }
        if let Some(l) = e.label() {
            let _ = write!(out, " label={}", quote(l));
        }
        out.push('\n');
    }
    for (id, g) in d.groups() {
        let join = |ids: &mut dyn Iterator<Item = &Id>| ids.map(Id::as_str).collect::<Vec<_>>().join(",");
        match g {
            Group::StateDiagram(s) => {
                let _ = write!(out, "group {id} StateDiagram members={}", join(&mut s.states.iter().chain(&s.tubes)));
                if let Some(m) = &s.marker {
                    let _ = write!(out, " marker={m}");
                }
                if let Some(o) = &s.owner {
                    let _ = write!(out, " owner={o}");
                }
            }
            Group::SplitTime(s) => {
                let members = join(&mut std::iter::once(s.trunk()).chain(s.branches()));
                let _ = write!(out, "group {id} SplitTime members={members} junction={}", s.junction());
                if let Some(p) = s.probabilities() {
                    let ps: Vec<String> = p.iter().map(|x| fmt_number(*x)).collect();
                    let _ = write!(out, " probs={}", ps.join(","));
                }
            }
        }
        out.push('\n');
    }
    for (owner, bs) in d.bindings() {
        for (attr, value) in bs {
            let name = match attr {
                AttrName::Named(n) => name_text(n),
                AttrName::DontKnow => "DK".to_string(),
            };
            let _ = writeln!(out, "attr {owner} {name}={value}");
        }
    }
    out
}

/// Text form of a single value.
pub fn format_value(v: &Value) -> String {
    v.to_string()
}

/// Parses a single value in text-format syntax.
pub fn parse_value(text: &str) -> Result<Value, ParseError> {
    let mut c = Cursor::new(text, 1);
    c.skip_ws();
    let v = c.value()?;
    if !c.at_end() {
        return Err(c.error("end of value"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOX: &str = "elem o1 PhysicalObjectCircle label=\"fox\"\nattr o1 color=\"brown\"\nattr o1 speed=\"quick\"\n";

    #[test]
    fn fox() {
        let d = parse(FOX).unwrap();
        assert_eq!(d.elements().len(), 1);
        assert_eq!(d.binding_count(), 2);
        assert_eq!(serialize(&d), FOX);
    }

    #[test]
    fn empty_input() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("# only a comment\n\n").unwrap().is_empty());
        assert_eq!(serialize(&Diagram::new()), "");
    }

    #[test]
    fn self_loop_motion() {
        let d = parse("elem o1 PhysicalObjectCircle\nedge m1 Motion o1 -> o1\n").unwrap();
        let e = d.edge("m1").unwrap();
        assert_eq!(e.source(), e.target());
        assert_eq!(e.kind(), EdgeKind::Motion);
    }

    #[test]
    fn forward_references() {
        let text = "edge r1 Relationship a -> b attribute=\"x\"\nelem b AggregationBox\nelem a DataPoint\ncontain a b\n";
        let d = parse(text).unwrap();
        assert_eq!(d.parent("a").map(Id::as_str), Some("b"));
    }

    #[test]
    fn unknown_kind_rejected() {
        let e = parse("elem o1 Gizmo\n").unwrap_err();
        assert_eq!(e.span, SourceSpan { line: 1, start: 9, end: 14 });
        assert_eq!(e.found, "\"Gizmo\"");
    }

    #[test]
    fn duplicate_id_rejected() {
        let e = parse("elem a DataPoint\nelem a DataPoint\n").unwrap_err();
        assert_eq!(e.span.line, 2);
        assert!(parse("elem a DataPoint\nedge a Time ->\n").is_err());
    }

    #[test]
    fn unknown_endpoint_rejected() {
        assert!(parse("edge m Motion a -> b\n").is_err());
    }

    #[test]
    fn edge_endpoint_forms() {
        let text = "elem a DataPoint\nedge e1 Time ->\nedge e2 Force a -> role=\"exerts\"\nedge e3 Force -> a label=\"push\"\n";
        let d = parse(text).unwrap();
        assert!(d.edge("e1").unwrap().source().is_none());
        assert_eq!(d.edge("e2").unwrap().role(), Some(ForceRole::Exerts));
        assert_eq!(d.edge("e3").unwrap().target().map(Id::as_str), Some("a"));
        assert_eq!(serialize(&d), text);
    }

    #[test]
    fn attribute_names() {
        let text = "elem a DataPoint\nattr a \"DK\"=1\nattr a \"two words\"=2\nattr a DK=85\n";
        let d = parse(text).unwrap();
        assert_eq!(d.binding_count(), 3);
        assert_eq!(serialize(&d), text);
        assert!(parse("elem a DataPoint\nattr a DK=DK\n").is_err());
    }

    #[test]
    fn groups_round_trip() {
        let text = "\
elem j XorBox
elem off StateCircle
elem on StateCircle
edge b1 Time ->
edge b2 Time ->
edge t Time ->
edge tb Tube on -> off
group g1 StateDiagram members=off,on,tb marker=on
group g2 SplitTime members=t,b1,b2 junction=j probs=0.25,0.75
";
        let d = parse(text).unwrap();
        assert_eq!(serialize(&d), text);
        assert!(parse(&text.replace("0.25,0.75", "0.833,0.166")).is_err());
    }

    #[test]
    fn payload_round_trip() {
        let text = "\
elem bar ValueBar value=range[0,inf)
elem c CorrelationBox slot.w1=\"bottle.weight\" slot.w2=\"cup.weight\" eq=\"w1 = 100 - w2\" eq=\"w2 = 100 - w1\"
elem d DescriptiveBox constraint=\"a left of b\" constraint=\"b above c\"
elem k CAObjectCircle forced.temp=30 detected.color=\"red\" open_ended=\"true\"
elem m MotivationTriangle markers=\"physical-,emotional+\" robinson=\"r\"
elem r RobinsonIcon categories=\"FutureAppraisal,Cathected\" valence=\"-\" subnode=\"E2\" cathected=\"bar\"
elem s SwirlyArray cells=\"c1@0,0;c2@1.5,-2\" active=\"c2\"
elem z ZoomBoxPair zoom_of=\"k\" factor=4 x=1 y=2 w=3 h=4
";
        let d = parse(text).unwrap();
        let again = parse(&serialize(&d)).unwrap();
        assert_eq!(again, d);
        assert_eq!(serialize(&again), serialize(&d));
    }

    #[test]
    fn unknown_payload_key_rejected() {
        let e = parse("elem a DataPoint colour=\"red\"\n").unwrap_err();
        assert_eq!(e.found, "\"colour\"");
        assert!(parse("elem a DataPoint x=1 y=2\n").is_err());
    }

    #[test]
    fn invalid_utf8() {
        let e = parse_bytes(b"elem a DataPoint\nelem \xff").unwrap_err();
        assert_eq!(e.span.line, 2);
        assert_eq!(e.span.start, 6);
    }

    #[test]
    fn trailing_garbage() {
        assert!(parse("contain a b c\n").is_err());
        assert!(parse("elem a DataPoint label=\"x\" junk\n").is_err());
    }
}
