//! Key/value encoding of element payloads.

use std::collections::BTreeSet;

use crate::model::{
    fmt_number, is_slot_name, parse_equation, AnchorRole, AppendageKind, AttributeBinding, CAPayload,
    CorrelationPayload, Element, ElementKind, GrammaticalRole, Id, Level, MotivationPayload, ObjectPayload, Payload,
    Placement, RobinsonCategory, RobinsonPayload, Slot, SwirlyCell, SwirlyPayload, TimeAnchorPayload, Valence, Value,
};

use super::SourceSpan;

pub(crate) struct KeyValue {
    pub key: String,
    pub value: Value,
    pub span: SourceSpan,
}

pub(crate) type KvError = (SourceSpan, String, String);

fn text(v: &str) -> Value {
    Value::text(v)
}

/// Keys and values for an element line, in canonical order.
pub(crate) fn encode(e: &Element) -> Vec<(String, Value)> {
    let mut out: Vec<(String, Value)> = Vec::new();
    let mut put = |k: &str, v: Value| out.push((k.to_string(), v));
    if let Some(l) = e.label() {
        put("label", text(l));
    }
    match e.payload() {
        Payload::Empty => {}
        Payload::Object(o) => {
            if let Some(r) = o.role {
                put("role", text(r.keyword()));
            }
            if let Some(a) = &o.appendage_of {
                put("appendage_of", text(a.as_str()));
            }
            if let Some(a) = o.appendage {
                put("appendage", text(a.keyword()));
            }
            if o.end_effector {
                put("end_effector", text("true"));
            }
        }
        Payload::CA(c) => {
            for b in c.forced() {
                put(&format!("forced.{}", b.attribute), b.value.clone());
            }
            for b in c.detected() {
                put(&format!("detected.{}", b.attribute), b.value.clone());
            }
            if c.open_ended {
                put("open_ended", text("true"));
            }
        }
        Payload::Marker0D { owner, attribute } => {
            if let Some(o) = owner {
                put("owner", text(o.as_str()));
            }
            if let Some(a) = attribute {
                put("attribute", text(a));
            }
        }
        Payload::Marker2D { excludes } => {
            if !excludes.is_empty() {
                put("excludes", text(&join_ids(excludes)));
            }
        }
        Payload::Descriptive { constraints } => {
            for c in constraints {
                put("constraint", text(c));
            }
        }
        Payload::Swirly(s) => {
            if !s.cells().is_empty() {
                let cells: Vec<String> =
                    s.cells().iter().map(|c| format!("{}@{},{}", c.id, fmt_number(c.x), fmt_number(c.y))).collect();
                put("cells", text(&cells.join(";")));
            }
            if !s.active().is_empty() {
                put("active", text(&s.active().iter().cloned().collect::<Vec<_>>().join(",")));
            }
        }
        Payload::ValueBar { value } => {
            if let Some(v) = value {
                put("value", v.clone());
            }
        }
        Payload::Correlation(c) => {
            for s in c.slots() {
                put(&format!("slot.{}", s.name), text(&format!("{}.{}", s.owner, s.attribute)));
            }
            for eq in c.equations() {
                put("eq", text(&eq.to_string()));
            }
        }
        Payload::TimeAnchor(a) => {
            if let Some(ax) = &a.axis {
                put("axis", text(ax.as_str()));
            }
            put("t", Value::number(a.t));
            put("role", text(a.role.keyword()));
        }
        Payload::AttendRing { on } => {
            if let Some(on) = on {
                put("on", text(on.as_str()));
            }
        }
        Payload::Motivation(m) => {
            if !m.markers().is_empty() {
                let cells: Vec<String> = m.markers().iter().map(|(l, v)| format!("{}{}", l.keyword(), v.sign())).collect();
                put("markers", text(&cells.join(",")));
            }
            if let Some(r) = &m.robinson {
                put("robinson", text(r.as_str()));
            }
        }
        Payload::Robinson(r) => {
            if !r.categories().is_empty() {
                let names: Vec<&str> = r.categories().iter().map(|c| c.name()).collect();
                put("categories", text(&names.join(",")));
            }
            put("valence", text(&r.valence().sign().to_string()));
            if let Some(s) = r.subnode() {
                put("subnode", text(s));
            }
            if let Some(c) = r.cathected() {
                put("cathected", text(c.as_str()));
            }
        }
        Payload::ModalVerb { verb, meaning } => {
            if let Some(v) = verb {
                put("verb", text(v));
            }
            if let Some(m) = meaning {
                put("meaning", text(m));
            }
        }
        Payload::Zoom { zoom_of, factor } => {
            if let Some(z) = zoom_of {
                put("zoom_of", text(z.as_str()));
            }
            if let Some(f) = factor {
                put("factor", Value::number(*f));
            }
        }
    }
    if let Some(p) = e.position() {
        for (k, v) in [("x", p.x), ("y", p.y), ("w", p.w), ("h", p.h)] {
            put(k, Value::number(v));
        }
    }
    out
}

fn join_ids(ids: &[Id]) -> String {
    ids.iter().map(Id::as_str).collect::<Vec<_>>().join(",")
}

/// Pulls typed fields out of a key list, tracking which keys were used.
struct Fields {
    kvs: Vec<KeyValue>,
    used: Vec<bool>,
    line: SourceSpan,
}

impl Fields {
    fn find(&mut self, key: &str) -> Result<Option<usize>, KvError> {
        let mut hits = self.kvs.iter().enumerate().filter(|(_, kv)| kv.key == key).map(|(i, _)| i);
        let first = hits.next();
        if let Some(second) = hits.next() {
            return Err((self.kvs[second].span, format!("a single {key}"), format!("repeated {key}")));
        }
        if let Some(i) = first {
            self.used[i] = true;
        }
        Ok(first)
    }

    fn value(&mut self, key: &str) -> Result<Option<Value>, KvError> {
        Ok(self.find(key)?.map(|i| self.kvs[i].value.clone()))
    }

    fn text(&mut self, key: &str) -> Result<Option<(String, SourceSpan)>, KvError> {
        let Some(i) = self.find(key)? else { return Ok(None) };
        match &self.kvs[i].value {
            Value::Text(t) => Ok(Some((t.clone(), self.kvs[i].span))),
            other => Err((self.kvs[i].span, format!("quoted text for {key}"), other.to_string())),
        }
    }

    fn number(&mut self, key: &str) -> Result<Option<f64>, KvError> {
        let Some(i) = self.find(key)? else { return Ok(None) };
        match &self.kvs[i].value {
            Value::Scalar { value, unit: None } => Ok(Some(*value)),
            other => Err((self.kvs[i].span, format!("number for {key}"), other.to_string())),
        }
    }

    fn id(&mut self, key: &str) -> Result<Option<Id>, KvError> {
        let Some((t, span)) = self.text(key)? else { return Ok(None) };
        Id::new(t.clone()).map(Some).map_err(|_| (span, "element id".into(), format!("{t:?}")))
    }

    fn flag(&mut self, key: &str) -> Result<bool, KvError> {
        match self.text(key)? {
            None => Ok(false),
            Some((t, _)) if t == "true" => Ok(true),
            Some((t, span)) => Err((span, "\"true\"".into(), format!("{t:?}"))),
        }
    }

    fn keyword<T>(&mut self, key: &str, parse: impl Fn(&str) -> Option<T>) -> Result<Option<T>, KvError> {
        let Some((t, span)) = self.text(key)? else { return Ok(None) };
        parse(&t).map(Some).ok_or((span, format!("known {key}"), format!("{t:?}")))
    }

    /// All keys with `prefix.`, in order; the suffix is returned.
    fn prefixed(&mut self, prefix: &str) -> Vec<(String, Value, SourceSpan)> {
        let mut out = Vec::new();
        for (i, kv) in self.kvs.iter().enumerate() {
            if let Some(rest) = kv.key.strip_prefix(prefix).and_then(|r| r.strip_prefix('.')) {
                self.used[i] = true;
                out.push((rest.to_string(), kv.value.clone(), kv.span));
            }
        }
        out
    }

    fn repeated_text(&mut self, key: &str) -> Result<Vec<String>, KvError> {
        let mut out = Vec::new();
        for (i, kv) in self.kvs.iter().enumerate() {
            if kv.key == key {
                self.used[i] = true;
                match &kv.value {
                    Value::Text(t) => out.push(t.clone()),
                    other => return Err((kv.span, format!("quoted text for {key}"), other.to_string())),
                }
            }
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), KvError> {
        match self.used.iter().position(|u| !u) {
            Some(i) => Err((self.kvs[i].span, "known key".into(), format!("{:?}", self.kvs[i].key))),
            None => Ok(()),
        }
    }
}

fn model_err(span: SourceSpan, e: impl std::fmt::Display) -> KvError {
    (span, "valid payload".into(), e.to_string())
}

fn id_list(t: &str, span: SourceSpan) -> Result<Vec<Id>, KvError> {
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|s| Id::new(s).map_err(|_| (span, "element id".into(), format!("{s:?}")))).collect()
}

pub(crate) fn decode(kind: ElementKind, kvs: Vec<KeyValue>, line: SourceSpan) -> Result<Element, KvError> {
    let used = vec![false; kvs.len()];
    let mut f = Fields { kvs, used, line };
    let mut e = Element::new(kind);
    if let Some((l, _)) = f.text("label")? {
        e = e.with_label(&l);
    }
    let payload = match Payload::default_for(kind) {
        Payload::Empty => Payload::Empty,
        Payload::Object(_) => Payload::Object(ObjectPayload {
            role: f.keyword("role", GrammaticalRole::from_keyword)?,
            appendage_of: f.id("appendage_of")?,
            appendage: f.keyword("appendage", AppendageKind::from_keyword)?,
            end_effector: f.flag("end_effector")?,
        }),
        Payload::CA(_) => {
            let mut side = |prefix: &str| -> Result<Vec<AttributeBinding>, KvError> {
                f.prefixed(prefix)
                    .into_iter()
                    .map(|(name, v, span)| AttributeBinding::named(name, v).map_err(|e| model_err(span, e)))
                    .collect()
            };
            let forced = side("forced")?;
            let detected = side("detected")?;
            let open = f.flag("open_ended")?;
            Payload::CA(CAPayload::new(forced, detected, open).map_err(|e| model_err(f.line, e))?)
        }
        Payload::Marker0D { .. } => Payload::Marker0D {
            owner: f.id("owner")?,
            attribute: f.text("attribute")?.map(|(t, _)| t),
        },
        Payload::Marker2D { .. } => {
            let excludes = match f.text("excludes")? {
                Some((t, span)) => id_list(&t, span)?,
                None => Vec::new(),
            };
            Payload::Marker2D { excludes }
        }
        Payload::Descriptive { .. } => Payload::Descriptive { constraints: f.repeated_text("constraint")? },
        Payload::Swirly(_) => {
            let mut cells = Vec::new();
            if let Some((t, span)) = f.text("cells")? {
                for part in t.split(';').filter(|p| !p.is_empty()) {
                    cells.push(parse_cell(part).ok_or((span, "cell as id@x,y".into(), format!("{part:?}")))?);
                }
            }
            let active: BTreeSet<String> = match f.text("active")? {
                Some((t, _)) => t.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect(),
                None => BTreeSet::new(),
            };
            Payload::Swirly(SwirlyPayload::new(cells, active).map_err(|e| model_err(f.line, e))?)
        }
        Payload::ValueBar { .. } => Payload::ValueBar { value: f.value("value")? },
        Payload::Correlation(_) => {
            let mut slots = Vec::new();
            for (name, v, span) in f.prefixed("slot") {
                let Value::Text(t) = &v else {
                    return Err((span, "quoted owner.attribute".into(), v.to_string()));
                };
                let bad = || (span, "owner.attribute".to_string(), format!("{t:?}"));
                let (owner, attr) = t.split_once('.').ok_or_else(bad)?;
                let owner = Id::new(owner).map_err(|_| bad())?;
                if !is_slot_name(&name) {
                    return Err((span, "slot name".into(), format!("{name:?}")));
                }
                slots.push(Slot { name, owner, attribute: attr.to_string() });
            }
            let mut equations = Vec::new();
            for t in f.repeated_text("eq")? {
                equations.push(parse_equation(&t).map_err(|e| (f.line, "equation".to_string(), e))?);
            }
            Payload::Correlation(CorrelationPayload::new(slots, equations).map_err(|e| model_err(f.line, e))?)
        }
        Payload::TimeAnchor(_) => Payload::TimeAnchor(TimeAnchorPayload {
            axis: f.id("axis")?,
            t: f.number("t")?.unwrap_or(0.0),
            role: f.keyword("role", AnchorRole::from_keyword)?.unwrap_or(AnchorRole::Now),
        }),
        Payload::AttendRing { .. } => Payload::AttendRing { on: f.id("on")? },
        Payload::Motivation(_) => {
            let mut markers = Vec::new();
            if let Some((t, span)) = f.text("markers")? {
                for part in t.split(',').filter(|p| !p.is_empty()) {
                    markers.push(parse_level(part).ok_or((span, "level with +/- sign".into(), format!("{part:?}")))?);
                }
            }
            let robinson = f.id("robinson")?;
            Payload::Motivation(MotivationPayload::new(markers, robinson).map_err(|e| model_err(f.line, e))?)
        }
        Payload::Robinson(_) => {
            let mut cats = BTreeSet::new();
            if let Some((t, span)) = f.text("categories")? {
                for part in t.split(',').filter(|p| !p.is_empty()) {
                    cats.insert(
                        RobinsonCategory::from_name(part).ok_or((span, "Robinson category".into(), format!("{part:?}")))?,
                    );
                }
            }
            let valence = match f.text("valence")? {
                None => Valence::Positive,
                Some((t, span)) => {
                    let mut cs = t.chars();
                    match (cs.next().and_then(Valence::from_sign), cs.next()) {
                        (Some(v), None) => v,
                        _ => return Err((span, "\"+\" or \"-\"".into(), format!("{t:?}"))),
                    }
                }
            };
            let subnode = f.text("subnode")?.map(|(t, _)| t);
            let cathected = f.id("cathected")?;
            Payload::Robinson(RobinsonPayload::new(cats, valence, subnode, cathected).map_err(|e| model_err(f.line, e))?)
        }
        Payload::ModalVerb { .. } => Payload::ModalVerb {
            verb: f.text("verb")?.map(|(t, _)| t),
            meaning: f.text("meaning")?.map(|(t, _)| t),
        },
        Payload::Zoom { .. } => Payload::Zoom { zoom_of: f.id("zoom_of")?, factor: f.number("factor")? },
    };
    e = e.with_payload(payload).map_err(|err| model_err(line, err))?;
    let coords = [f.number("x")?, f.number("y")?, f.number("w")?, f.number("h")?];
    match coords {
        [Some(x), Some(y), Some(w), Some(h)] => {
            e = e.with_position(Placement::new(x, y, w, h).map_err(|err| model_err(line, err))?);
        }
        [None, None, None, None] => {}
        _ => return Err((line, "all of x, y, w, h".into(), "a partial position".into())),
    }
    f.finish()?;
    Ok(e)
}

fn parse_cell(s: &str) -> Option<SwirlyCell> {
    let (id, xy) = s.split_once('@')?;
    let (x, y) = xy.split_once(',')?;
    let (x, y): (f64, f64) = (x.parse().ok()?, y.parse().ok()?);
    (x.is_finite() && y.is_finite()).then(|| SwirlyCell { id: id.to_string(), x, y })
}

fn parse_level(s: &str) -> Option<(Level, Valence)> {
    let sign = s.chars().last()?;
    let valence = Valence::from_sign(sign)?;
    Some((Level::from_keyword(&s[..s.len() - 1])?, valence))
}
