use std::collections::BTreeSet;
use std::fmt;

use super::correlation::CorrelationPayload;
use super::value::{AttrName, AttributeBinding, Value};
use super::{Id, ModelError};

/// Every concrete element-like Building Block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementKind {
    PhysicalObjectCircle,
    DataObjectCircle,
    CAObjectCircle,
    DataPoint,
    StateCircle,
    Cell,
    SensorBar,
    Marker0D,
    Marker1D,
    Marker2D,
    VerbatimBox,
    DescriptiveBox,
    AggregationBox,
    CAAggregationBox,
    XorBox,
    SwirlyArray,
    ValueBar,
    CorrelationBox,
    TimeAnchor,
    DataSetBox,
    LabelString,
    AttendRing,
    MotivationTriangle,
    RobinsonIcon,
    ModalVerbIcon,
    ZoomBoxPair,
}

impl ElementKind {
    pub const ALL: [ElementKind; 26] = [
        ElementKind::PhysicalObjectCircle,
        ElementKind::DataObjectCircle,
        ElementKind::CAObjectCircle,
        ElementKind::DataPoint,
        ElementKind::StateCircle,
        ElementKind::Cell,
        ElementKind::SensorBar,
        ElementKind::Marker0D,
        ElementKind::Marker1D,
        ElementKind::Marker2D,
        ElementKind::VerbatimBox,
        ElementKind::DescriptiveBox,
        ElementKind::AggregationBox,
        ElementKind::CAAggregationBox,
        ElementKind::XorBox,
        ElementKind::SwirlyArray,
        ElementKind::ValueBar,
        ElementKind::CorrelationBox,
        ElementKind::TimeAnchor,
        ElementKind::DataSetBox,
        ElementKind::LabelString,
        ElementKind::AttendRing,
        ElementKind::MotivationTriangle,
        ElementKind::RobinsonIcon,
        ElementKind::ModalVerbIcon,
        ElementKind::ZoomBoxPair,
    ];

    pub fn name(self) -> &'static str {
        use ElementKind::*;
        match self {
            PhysicalObjectCircle => "PhysicalObjectCircle",
            DataObjectCircle => "DataObjectCircle",
            CAObjectCircle => "CAObjectCircle",
            DataPoint => "DataPoint",
            StateCircle => "StateCircle",
            Cell => "Cell",
            SensorBar => "SensorBar",
            Marker0D => "Marker0D",
            Marker1D => "Marker1D",
            Marker2D => "Marker2D",
            VerbatimBox => "VerbatimBox",
            DescriptiveBox => "DescriptiveBox",
            AggregationBox => "AggregationBox",
            CAAggregationBox => "CAAggregationBox",
            XorBox => "XorBox",
            SwirlyArray => "SwirlyArray",
            ValueBar => "ValueBar",
            CorrelationBox => "CorrelationBox",
            TimeAnchor => "TimeAnchor",
            DataSetBox => "DataSetBox",
            LabelString => "LabelString",
            AttendRing => "AttendRing",
            MotivationTriangle => "MotivationTriangle",
            RobinsonIcon => "RobinsonIcon",
            ModalVerbIcon => "ModalVerbIcon",
            ZoomBoxPair => "ZoomBoxPair",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ElementKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Location Box family: Verbatim, Descriptive, Aggregation and C-A Aggregation.
    pub fn is_location_box(self) -> bool {
        use ElementKind::*;
        matches!(self, VerbatimBox | DescriptiveBox | AggregationBox | CAAggregationBox)
    }

    pub fn is_container(self) -> bool {
        use ElementKind::*;
        self.is_location_box() || matches!(self, XorBox | DataSetBox | ZoomBoxPair)
    }

    /// Objects of arbitrary quantity: circles, data points and boxes.
    pub fn is_nonquan(self) -> bool {
        use ElementKind::*;
        self.is_location_box()
            || matches!(
                self,
                PhysicalObjectCircle | DataObjectCircle | CAObjectCircle | DataPoint | XorBox | DataSetBox
            )
    }

    /// Rank used by the nesting rule; higher is stricter.
    pub fn box_strictness(self) -> Option<u8> {
        use ElementKind::*;
        match self {
            VerbatimBox => Some(3),
            DescriptiveBox => Some(2),
            AggregationBox | CAAggregationBox => Some(1),
            _ => None,
        }
    }

    /// Contents of these boxes must carry explicit positions.
    pub fn fixes_positions(self) -> bool {
        matches!(self, ElementKind::VerbatimBox | ElementKind::DescriptiveBox)
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Placement {
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Result<Self, ModelError> {
        if ![x, y, w, h].iter().all(|v| v.is_finite()) {
            return Err(ModelError::InvalidPlacement("coordinates must be finite".into()));
        }
        if w < 0.0 || h < 0.0 {
            return Err(ModelError::InvalidPlacement(format!("negative extent {w}x{h}")));
        }
        Ok(Placement { x, y, w, h })
    }

    pub fn overlaps(&self, other: &Placement) -> bool {
        self.x < other.x + other.w && other.x < self.x + self.w && self.y < other.y + other.h && other.y < self.y + self.h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GrammaticalRole {
    Subject,
    DirectObject,
    IndirectObject,
}

impl GrammaticalRole {
    pub const ALL: [GrammaticalRole; 3] =
        [GrammaticalRole::Subject, GrammaticalRole::DirectObject, GrammaticalRole::IndirectObject];

    pub fn keyword(self) -> &'static str {
        match self {
            GrammaticalRole::Subject => "subject",
            GrammaticalRole::DirectObject => "direct",
            GrammaticalRole::IndirectObject => "indirect",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.keyword() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AppendageKind {
    External,
    Internal,
}

impl AppendageKind {
    pub fn keyword(self) -> &'static str {
        match self {
            AppendageKind::External => "external",
            AppendageKind::Internal => "internal",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        [AppendageKind::External, AppendageKind::Internal].into_iter().find(|a| a.keyword() == s)
    }
}

/// Payload of physical and data Object Circles.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObjectPayload {
    pub role: Option<GrammaticalRole>,
    /// Body this circle protrudes from, when it is an appendage.
    pub appendage_of: Option<Id>,
    pub appendage: Option<AppendageKind>,
    pub end_effector: bool,
}

/// Forced inputs and detected outputs of a C-A circle or box.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CAPayload {
    forced: Vec<AttributeBinding>,
    detected: Vec<AttributeBinding>,
    pub open_ended: bool,
}

impl CAPayload {
    pub fn new(
        mut forced: Vec<AttributeBinding>,
        mut detected: Vec<AttributeBinding>,
        open_ended: bool,
    ) -> Result<Self, ModelError> {
        for list in [&forced, &detected] {
            let mut seen = BTreeSet::new();
            for b in list {
                b.check()?;
                let AttrName::Named(n) = &b.attribute else {
                    return Err(ModelError::InvalidPayload("C-A attributes must be named".into()));
                };
                if !is_token(n) {
                    return Err(ModelError::InvalidPayload(format!("C-A attribute {n:?} is not a plain name")));
                }
                if !seen.insert(n.clone()) {
                    return Err(ModelError::InvalidPayload(format!("C-A attribute {n:?} listed twice")));
                }
            }
        }
        if let Some(b) = forced.iter().find(|f| detected.iter().any(|d| d.attribute == f.attribute)) {
            return Err(ModelError::InvalidPayload(format!(
                "attribute {} is both forced and detected",
                b.attribute
            )));
        }
        forced.sort_by(|a, b| a.attribute.cmp(&b.attribute));
        detected.sort_by(|a, b| a.attribute.cmp(&b.attribute));
        Ok(CAPayload { forced, detected, open_ended })
    }

    pub fn forced(&self) -> &[AttributeBinding] {
        &self.forced
    }

    pub fn detected(&self) -> &[AttributeBinding] {
        &self.detected
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnchorRole {
    Now,
    Event,
    EventStart,
    EventEnd,
    Reference,
}

impl AnchorRole {
    pub const ALL: [AnchorRole; 5] =
        [AnchorRole::Now, AnchorRole::Event, AnchorRole::EventStart, AnchorRole::EventEnd, AnchorRole::Reference];

    pub fn keyword(self) -> &'static str {
        match self {
            AnchorRole::Now => "now",
            AnchorRole::Event => "event",
            AnchorRole::EventStart => "event_start",
            AnchorRole::EventEnd => "event_end",
            AnchorRole::Reference => "reference",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.keyword() == s)
    }
}

/// A labelled tick on a Time edge. `t` is relative to "now" at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeAnchorPayload {
    pub axis: Option<Id>,
    pub t: f64,
    pub role: AnchorRole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Automaton,
    Physical,
    Emotional,
    Intellectual,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Automaton, Level::Physical, Level::Emotional, Level::Intellectual];

    pub fn keyword(self) -> &'static str {
        match self {
            Level::Automaton => "automaton",
            Level::Physical => "physical",
            Level::Emotional => "emotional",
            Level::Intellectual => "intellectual",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.keyword() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valence {
    Positive,
    Negative,
}

impl Valence {
    pub fn sign(self) -> char {
        match self {
            Valence::Positive => '+',
            Valence::Negative => '-',
        }
    }

    pub fn from_sign(c: char) -> Option<Self> {
        match c {
            '+' => Some(Valence::Positive),
            '-' => Some(Valence::Negative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MotivationPayload {
    markers: Vec<(Level, Valence)>,
    pub robinson: Option<Id>,
}

impl MotivationPayload {
    pub fn new(mut markers: Vec<(Level, Valence)>, robinson: Option<Id>) -> Result<Self, ModelError> {
        markers.sort();
        if let Some(w) = markers.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::InvalidPayload(format!(
                "more than one marker in cell {}{}",
                w[0].0.keyword(),
                w[0].1.sign()
            )));
        }
        Ok(MotivationPayload { markers, robinson })
    }

    pub fn markers(&self) -> &[(Level, Valence)] {
        &self.markers
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RobinsonCategory {
    ObjectProperties,
    FutureAppraisal,
    EventRelated,
    SelfAppraisal,
    Social,
    Cathected,
}

impl RobinsonCategory {
    pub const ALL: [RobinsonCategory; 6] = [
        RobinsonCategory::ObjectProperties,
        RobinsonCategory::FutureAppraisal,
        RobinsonCategory::EventRelated,
        RobinsonCategory::SelfAppraisal,
        RobinsonCategory::Social,
        RobinsonCategory::Cathected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RobinsonCategory::ObjectProperties => "ObjectProperties",
            RobinsonCategory::FutureAppraisal => "FutureAppraisal",
            RobinsonCategory::EventRelated => "EventRelated",
            RobinsonCategory::SelfAppraisal => "SelfAppraisal",
            RobinsonCategory::Social => "Social",
            RobinsonCategory::Cathected => "Cathected",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobinsonPayload {
    categories: BTreeSet<RobinsonCategory>,
    valence: Valence,
    subnode: Option<String>,
    cathected: Option<Id>,
}

impl RobinsonPayload {
    pub fn new(
        categories: BTreeSet<RobinsonCategory>,
        valence: Valence,
        subnode: Option<String>,
        cathected: Option<Id>,
    ) -> Result<Self, ModelError> {
        if cathected.is_some() && !categories.contains(&RobinsonCategory::Cathected) {
            return Err(ModelError::InvalidPayload(
                "a cathected target needs the Cathected category active".into(),
            ));
        }
        if let Some(s) = &subnode {
            if !is_token(s) {
                return Err(ModelError::InvalidPayload(format!("subnode code {s:?} is not a plain token")));
            }
        }
        Ok(RobinsonPayload { categories, valence, subnode, cathected })
    }

    pub fn categories(&self) -> &BTreeSet<RobinsonCategory> {
        &self.categories
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn subnode(&self) -> Option<&str> {
        self.subnode.as_deref()
    }

    pub fn cathected(&self) -> Option<&Id> {
        self.cathected.as_ref()
    }
}

impl Default for RobinsonPayload {
    fn default() -> Self {
        RobinsonPayload { categories: BTreeSet::new(), valence: Valence::Positive, subnode: None, cathected: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwirlyCell {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

/// Cells of a Swirly Array. Positions are free; no grid is implied.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SwirlyPayload {
    cells: Vec<SwirlyCell>,
    active: BTreeSet<String>,
}

impl SwirlyPayload {
    pub fn new(cells: Vec<SwirlyCell>, active: BTreeSet<String>) -> Result<Self, ModelError> {
        let mut ids = BTreeSet::new();
        for c in &cells {
            if !is_token(&c.id) {
                return Err(ModelError::InvalidPayload(format!("cell id {:?} is not a plain token", c.id)));
            }
            if !c.x.is_finite() || !c.y.is_finite() {
                return Err(ModelError::InvalidPayload(format!("cell {} has a non-finite position", c.id)));
            }
            if !ids.insert(c.id.as_str()) {
                return Err(ModelError::InvalidPayload(format!("cell {} declared twice", c.id)));
            }
        }
        if let Some(a) = active.iter().find(|a| !ids.contains(a.as_str())) {
            return Err(ModelError::InvalidPayload(format!("active cell {a} is not declared")));
        }
        Ok(SwirlyPayload { cells, active })
    }

    pub fn cells(&self) -> &[SwirlyCell] {
        &self.cells
    }

    pub fn active(&self) -> &BTreeSet<String> {
        &self.active
    }
}

/// Kind-specific data of an element.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Empty,
    Object(ObjectPayload),
    CA(CAPayload),
    /// A point marker, optionally placed on an attribute of an owner.
    Marker0D { owner: Option<Id>, attribute: Option<String> },
    /// Shaded allowed region; `excludes` lists elements outside it.
    Marker2D { excludes: Vec<Id> },
    /// Free-text spatial constraints between members.
    Descriptive { constraints: Vec<String> },
    Swirly(SwirlyPayload),
    ValueBar { value: Option<Value> },
    Correlation(CorrelationPayload),
    TimeAnchor(TimeAnchorPayload),
    /// The Motion edge this ring decorates.
    AttendRing { on: Option<Id> },
    Motivation(MotivationPayload),
    Robinson(RobinsonPayload),
    ModalVerb { verb: Option<String>, meaning: Option<String> },
    Zoom { zoom_of: Option<Id>, factor: Option<f64> },
}

impl Payload {
    pub fn variant_name(&self) -> &'static str {
        match self {
            Payload::Empty => "empty",
            Payload::Object(_) => "object",
            Payload::CA(_) => "concrete-abstract",
            Payload::Marker0D { .. } => "0D marker",
            Payload::Marker2D { .. } => "2D marker",
            Payload::Descriptive { .. } => "descriptive",
            Payload::Swirly(_) => "swirly array",
            Payload::ValueBar { .. } => "value bar",
            Payload::Correlation(_) => "correlation",
            Payload::TimeAnchor(_) => "time anchor",
            Payload::AttendRing { .. } => "attend ring",
            Payload::Motivation(_) => "motivation",
            Payload::Robinson(_) => "robinson",
            Payload::ModalVerb { .. } => "modal verb",
            Payload::Zoom { .. } => "zoom",
        }
    }

    pub fn default_for(kind: ElementKind) -> Payload {
        use ElementKind as K;
        match kind {
            K::PhysicalObjectCircle | K::DataObjectCircle => Payload::Object(ObjectPayload::default()),
            K::CAObjectCircle | K::CAAggregationBox => Payload::CA(CAPayload::default()),
            K::Marker0D => Payload::Marker0D { owner: None, attribute: None },
            K::Marker2D => Payload::Marker2D { excludes: Vec::new() },
            K::DescriptiveBox => Payload::Descriptive { constraints: Vec::new() },
            K::SwirlyArray => Payload::Swirly(SwirlyPayload::default()),
            K::ValueBar => Payload::ValueBar { value: None },
            K::CorrelationBox => {
                Payload::Correlation(CorrelationPayload::new(Vec::new(), Vec::new()).expect("empty correlation"))
            }
            K::TimeAnchor => Payload::TimeAnchor(TimeAnchorPayload { axis: None, t: 0.0, role: AnchorRole::Now }),
            K::AttendRing => Payload::AttendRing { on: None },
            K::MotivationTriangle => Payload::Motivation(MotivationPayload::default()),
            K::RobinsonIcon => Payload::Robinson(RobinsonPayload::default()),
            K::ModalVerbIcon => Payload::ModalVerb { verb: None, meaning: None },
            K::ZoomBoxPair => Payload::Zoom { zoom_of: None, factor: None },
            _ => Payload::Empty,
        }
    }

    fn fits(&self, kind: ElementKind) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(&Payload::default_for(kind))
    }

    /// Checks invariants that are not enforced by the payload constructors.
    fn check(&self) -> Result<(), ModelError> {
        match self {
            Payload::Object(o) => {
                if o.appendage.is_some() != o.appendage_of.is_some() {
                    return Err(ModelError::InvalidPayload(
                        "appendage kind and appendage body must be given together".into(),
                    ));
                }
                if o.end_effector && o.appendage_of.is_none() {
                    return Err(ModelError::InvalidPayload("an end effector must be an appendage".into()));
                }
            }
            Payload::Marker0D { owner, attribute } => {
                if attribute.is_some() && owner.is_none() {
                    return Err(ModelError::InvalidPayload("a marked attribute needs an owner".into()));
                }
                if attribute.as_deref() == Some("") {
                    return Err(ModelError::InvalidPayload("marked attribute name is empty".into()));
                }
            }
            Payload::ValueBar { value: Some(v) } => v.check()?,
            Payload::TimeAnchor(a) if !a.t.is_finite() => {
                return Err(ModelError::InvalidPayload(format!("time {} is not finite", a.t)));
            }
            Payload::Zoom { factor: Some(f), .. } if !(f.is_finite() && *f > 0.0) => {
                return Err(ModelError::InvalidPayload(format!("zoom factor {f} must be positive")));
            }
            Payload::ModalVerb { verb, meaning } if verb.is_some() != meaning.is_some() => {
                return Err(ModelError::InvalidPayload("modal verb and meaning go together".into()));
            }
            _ => {}
        }
        Ok(())
    }

    /// Ids of other elements or edges this payload points at.
    pub fn refs(&self) -> Vec<&Id> {
        match self {
            Payload::Object(o) => o.appendage_of.iter().collect(),
            Payload::Marker0D { owner, .. } => owner.iter().collect(),
            Payload::Marker2D { excludes } => excludes.iter().collect(),
            Payload::Correlation(c) => c.slots().iter().map(|s| &s.owner).collect(),
            Payload::TimeAnchor(a) => a.axis.iter().collect(),
            Payload::AttendRing { on } => on.iter().collect(),
            Payload::Motivation(m) => m.robinson.iter().collect(),
            Payload::Robinson(r) => r.cathected.iter().collect(),
            Payload::Zoom { zoom_of, .. } => zoom_of.iter().collect(),
            _ => Vec::new(),
        }
    }

    /// Rewrites every id reference through `f`.
    pub fn map_ids(&mut self, f: &mut dyn FnMut(&Id) -> Id) {
        let mut opt = |o: &mut Option<Id>| {
            if let Some(id) = o {
                *id = f(id);
            }
        };
        match self {
            Payload::Object(o) => opt(&mut o.appendage_of),
            Payload::Marker0D { owner, .. } => opt(owner),
            Payload::Marker2D { excludes } => {
                for id in excludes.iter_mut() {
                    *id = f(id);
                }
            }
            Payload::Correlation(c) => {
                let slots = c
                    .slots()
                    .iter()
                    .map(|s| super::correlation::Slot { owner: f(&s.owner), ..s.clone() })
                    .collect();
                *c = CorrelationPayload::new(slots, c.equations().to_vec()).expect("renaming keeps payload valid");
            }
            Payload::TimeAnchor(a) => opt(&mut a.axis),
            Payload::AttendRing { on } => opt(on),
            Payload::Motivation(m) => opt(&mut m.robinson),
            Payload::Robinson(r) => opt(&mut r.cathected),
            Payload::Zoom { zoom_of, .. } => opt(zoom_of),
            _ => {}
        }
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

/// One Building Block instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    kind: ElementKind,
    label: Option<String>,
    payload: Payload,
    position: Option<Placement>,
}

impl Element {
    pub fn new(kind: ElementKind) -> Self {
        Element { kind, label: None, payload: Payload::default_for(kind), position: None }
    }

    pub fn labeled(kind: ElementKind, label: &str) -> Self {
        Element::new(kind).with_label(label)
    }

    /// An empty label is the same as no label.
    pub fn with_label(mut self, label: &str) -> Self {
        self.label = (!label.is_empty()).then(|| label.to_string());
        self
    }

    pub fn with_payload(mut self, payload: Payload) -> Result<Self, ModelError> {
        if !payload.fits(self.kind) {
            return Err(ModelError::PayloadMismatch { kind: self.kind, payload: payload.variant_name() });
        }
        payload.check()?;
        self.payload = payload;
        Ok(self)
    }

    pub fn with_position(mut self, p: Placement) -> Self {
        self.position = Some(p);
        self
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn position(&self) -> Option<&Placement> {
        self.position.as_ref()
    }

    pub fn object(&self) -> Option<&ObjectPayload> {
        match &self.payload {
            Payload::Object(o) => Some(o),
            _ => None,
        }
    }

    pub(crate) fn payload_mut(&mut self) -> &mut Payload {
        &mut self.payload
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::value::Value;

    fn id(s: &str) -> Id {
        Id::new(s).unwrap()
    }

    #[test]
    fn every_kind_builds_with_default_payload() {
        for k in ElementKind::ALL {
            let e = Element::new(k);
            assert_eq!(e.kind(), k);
            assert!(Element::new(k).with_payload(Payload::default_for(k)).is_ok(), "{k}");
            assert_eq!(ElementKind::from_name(k.name()), Some(k));
        }
    }

    #[test]
    fn payload_must_match_kind() {
        let r = Element::new(ElementKind::StateCircle).with_payload(Payload::Object(ObjectPayload::default()));
        assert!(matches!(r, Err(ModelError::PayloadMismatch { .. })));
        let r = Element::new(ElementKind::PhysicalObjectCircle).with_payload(Payload::Empty);
        assert!(r.is_err());
    }

    #[test]
    fn ca_forced_and_detected_disjoint() {
        let b = |n: &str| AttributeBinding::named(n, Value::number(1.0)).unwrap();
        assert!(CAPayload::new(vec![b("temp")], vec![b("color")], false).is_ok());
        assert!(CAPayload::new(vec![b("temp")], vec![b("temp")], false).is_err());
        assert!(CAPayload::new(vec![b("temp"), b("temp")], vec![], false).is_err());
    }

    #[test]
    fn motivation_one_marker_per_cell() {
        let ok = MotivationPayload::new(vec![(Level::Emotional, Valence::Positive), (Level::Emotional, Valence::Negative)], None);
        assert!(ok.is_ok());
        let dup = MotivationPayload::new(vec![(Level::Physical, Valence::Negative), (Level::Physical, Valence::Negative)], None);
        assert!(dup.is_err());
    }

    #[test]
    fn robinson_cathected_needs_category() {
        let cats: BTreeSet<_> = [RobinsonCategory::Social].into();
        assert!(RobinsonPayload::new(cats.clone(), Valence::Positive, None, Some(id("o1"))).is_err());
        let mut with = cats;
        with.insert(RobinsonCategory::Cathected);
        assert!(RobinsonPayload::new(with, Valence::Positive, Some("E2".into()), Some(id("o1"))).is_ok());
    }

    #[test]
    fn swirly_active_subset_of_cells() {
        let cells = vec![SwirlyCell { id: "a".into(), x: 0.0, y: 0.0 }, SwirlyCell { id: "b".into(), x: 3.5, y: -1.0 }];
        assert!(SwirlyPayload::new(cells.clone(), ["a".to_string()].into()).is_ok());
        assert!(SwirlyPayload::new(cells.clone(), ["z".to_string()].into()).is_err());
        let mut dup = cells;
        dup.push(SwirlyCell { id: "a".into(), x: 1.0, y: 1.0 });
        assert!(SwirlyPayload::new(dup, BTreeSet::new()).is_err());
    }

    #[test]
    fn object_appendage_fields_go_together() {
        let bad = ObjectPayload { appendage: Some(AppendageKind::External), ..Default::default() };
        assert!(Element::new(ElementKind::PhysicalObjectCircle).with_payload(Payload::Object(bad)).is_err());
        let eff = ObjectPayload { end_effector: true, ..Default::default() };
        assert!(Element::new(ElementKind::PhysicalObjectCircle).with_payload(Payload::Object(eff)).is_err());
    }

    #[test]
    fn zoom_factor_positive() {
        let z = Payload::Zoom { zoom_of: None, factor: Some(0.0) };
        assert!(Element::new(ElementKind::ZoomBoxPair).with_payload(z).is_err());
    }

    #[test]
    fn time_anchor_finite() {
        let a = Payload::TimeAnchor(TimeAnchorPayload { axis: None, t: f64::NAN, role: AnchorRole::Now });
        assert!(Element::new(ElementKind::TimeAnchor).with_payload(a).is_err());
    }

    #[test]
    fn marker_attribute_needs_owner() {
        let m = Payload::Marker0D { owner: None, attribute: Some("color".into()) };
        assert!(Element::new(ElementKind::Marker0D).with_payload(m).is_err());
    }

    #[test]
    fn placement_rejects_negative_extent() {
        assert!(Placement::new(0.0, 0.0, -1.0, 1.0).is_err());
        assert!(Placement::new(0.0, 0.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn empty_label_is_none() {
        assert_eq!(Element::labeled(ElementKind::PhysicalObjectCircle, "").label(), None);
    }

    #[test]
    fn containers_and_nonquans() {
        assert!(ElementKind::AggregationBox.is_container());
        assert!(!ElementKind::StateCircle.is_container());
        assert!(ElementKind::DataPoint.is_nonquan());
        assert!(!ElementKind::Marker0D.is_nonquan());
    }
}
