//! Sentence-to-diagram heuristics as trigger tags mapped to required
//! building blocks, with a conformance check against a diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::model::{Diagram, EdgeKind, ElementKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeuristicsError {
    #[error("unknown trigger tag {0:?}")]
    UnknownTag(String),
    #[error("unknown required kind {0:?}")]
    UnknownKind(String),
    #[error("rules line {line}: {message}")]
    Rules { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriggerTag {
    Barrier,
    LiftCarry,
    DamageInterference,
    SpatialRelation,
    RelativeTime,
    DownwardGravity,
    Interior,
    Speed,
    CollectiveView,
    LineOfSight,
    CausalConnective,
    TransferTravel,
    InformationTransfer,
    TemporalProcess,
}

impl TriggerTag {
    pub const ALL: [TriggerTag; 14] = [
        TriggerTag::Barrier,
        TriggerTag::LiftCarry,
        TriggerTag::DamageInterference,
        TriggerTag::SpatialRelation,
        TriggerTag::RelativeTime,
        TriggerTag::DownwardGravity,
        TriggerTag::Interior,
        TriggerTag::Speed,
        TriggerTag::CollectiveView,
        TriggerTag::LineOfSight,
        TriggerTag::CausalConnective,
        TriggerTag::TransferTravel,
        TriggerTag::InformationTransfer,
        TriggerTag::TemporalProcess,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TriggerTag::Barrier => "barrier",
            TriggerTag::LiftCarry => "lift-carry",
            TriggerTag::DamageInterference => "damage-interference",
            TriggerTag::SpatialRelation => "spatial-relation",
            TriggerTag::RelativeTime => "relative-time",
            TriggerTag::DownwardGravity => "downward-gravity",
            TriggerTag::Interior => "interior",
            TriggerTag::Speed => "speed",
            TriggerTag::CollectiveView => "collective-view",
            TriggerTag::LineOfSight => "line-of-sight",
            TriggerTag::CausalConnective => "causal-connective",
            TriggerTag::TransferTravel => "transfer-travel",
            TriggerTag::InformationTransfer => "information-transfer",
            TriggerTag::TemporalProcess => "temporal-process",
        }
    }

    pub fn from_name(s: &str) -> Option<TriggerTag> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }

    /// 1-based position in the heuristic list.
    pub fn index(self) -> u8 {
        Self::ALL.iter().position(|t| *t == self).expect("listed") as u8 + 1
    }
}

impl fmt::Display for TriggerTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A tag with the cue word that fired it, if any.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trigger {
    pub tag: TriggerTag,
    pub cue: Option<String>,
}

impl Trigger {
    pub fn with_cue(tag: TriggerTag, cue: &str) -> Self {
        Trigger { tag, cue: Some(cue.to_lowercase()) }
    }

    /// `tag` or `tag:cue`.
    pub fn parse(s: &str) -> Result<Trigger, HeuristicsError> {
        let (name, cue) = match s.split_once(':') {
            Some((n, c)) => (n, Some(c)),
            None => (s, None),
        };
        let tag = TriggerTag::from_name(name.trim()).ok_or_else(|| HeuristicsError::UnknownTag(name.to_string()))?;
        Ok(match cue {
            Some(c) => Trigger::with_cue(tag, c.trim()),
            None => Trigger::from(tag),
        })
    }
}

impl From<TriggerTag> for Trigger {
    fn from(tag: TriggerTag) -> Self {
        Trigger { tag, cue: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RequiredKind {
    Element(ElementKind),
    Edge(EdgeKind),
    /// Any Location Box.
    AnyBox,
    /// Any 0D, 1D or 2D Marker.
    AnyMarker,
    /// Any Physical, Data or C Object Circle.
    AnyObjectCircle,
}

impl RequiredKind {
    pub fn name(self) -> String {
        match self {
            RequiredKind::Element(k) => k.name().to_string(),
            RequiredKind::Edge(EdgeKind::Tube) => "PathwayTube".to_string(),
            RequiredKind::Edge(EdgeKind::Relationship) => "RelationshipMarker".to_string(),
            RequiredKind::Edge(k) => format!("{}Arrow", k.name()),
            RequiredKind::AnyBox => "AnyBox".to_string(),
            RequiredKind::AnyMarker => "AnyMarker".to_string(),
            RequiredKind::AnyObjectCircle => "AnyObjectCircle".to_string(),
        }
    }

    pub fn from_name(s: &str) -> Option<RequiredKind> {
        match s {
            "AnyBox" => return Some(RequiredKind::AnyBox),
            "AnyMarker" => return Some(RequiredKind::AnyMarker),
            "AnyObjectCircle" => return Some(RequiredKind::AnyObjectCircle),
            "PathwayTube" => return Some(RequiredKind::Edge(EdgeKind::Tube)),
            "RelationshipMarker" => return Some(RequiredKind::Edge(EdgeKind::Relationship)),
            _ => {}
        }
        if let Some(k) = s.strip_suffix("Arrow").and_then(EdgeKind::from_name) {
            return Some(RequiredKind::Edge(k));
        }
        ElementKind::from_name(s).map(RequiredKind::Element)
    }

    pub fn matches_element(self, k: ElementKind) -> bool {
        use ElementKind::*;
        match self {
            RequiredKind::Element(e) => e == k,
            RequiredKind::Edge(_) => false,
            RequiredKind::AnyBox => k.is_location_box(),
            RequiredKind::AnyMarker => matches!(k, Marker0D | Marker1D | Marker2D),
            RequiredKind::AnyObjectCircle => matches!(k, PhysicalObjectCircle | DataObjectCircle | CAObjectCircle),
        }
    }

    /// Number of diagram items of this kind.
    pub fn census(self, d: &Diagram) -> usize {
        match self {
            RequiredKind::Edge(k) => d.edges().values().filter(|e| e.kind() == k).count(),
            _ => d.elements().values().filter(|e| self.matches_element(e.kind())).count(),
        }
    }
}

impl fmt::Display for RequiredKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub index: u8,
    pub tag: TriggerTag,
    pub mandatory: BTreeSet<RequiredKind>,
    pub advisory: BTreeSet<RequiredKind>,
    /// Cue words that promote the advisory entries to mandatory.
    pub cues: BTreeSet<String>,
}

/// Required kinds, each with the heuristics that asked for it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Requirement {
    pub mandatory: BTreeMap<RequiredKind, BTreeSet<u8>>,
    pub advisory: BTreeMap<RequiredKind, BTreeSet<u8>>,
}

impl Requirement {
    pub fn is_empty(&self) -> bool {
        self.mandatory.is_empty() && self.advisory.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Mandatory,
    Advisory,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub kind: RequiredKind,
    pub level: Level,
    pub count: usize,
    pub heuristics: BTreeSet<u8>,
}

impl CheckEntry {
    pub fn present(&self) -> bool {
        self.count > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    /// True when every mandatory kind is present.
    pub fn satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.level == Level::Advisory || e.present())
    }

    pub fn missing(&self, level: Level) -> Vec<RequiredKind> {
        self.entries.iter().filter(|e| e.level == level && !e.present()).map(|e| e.kind).collect()
    }
}

const BUILTIN: &str = include_str!("../data/heuristics.rules");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    rules: BTreeMap<TriggerTag, Rule>,
}

fn kinds(field: &str, line: usize) -> Result<BTreeSet<RequiredKind>, HeuristicsError> {
    field
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            RequiredKind::from_name(s)
                .ok_or_else(|| HeuristicsError::Rules { line, message: HeuristicsError::UnknownKind(s.into()).to_string() })
        })
        .collect()
}

impl RuleSet {
    /// Parses `index | tag | mandatory | advisory | cues` lines; all 14
    /// tags must appear once, at their own index.
    pub fn parse(text: &str) -> Result<RuleSet, HeuristicsError> {
        let mut rules = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let err = |message: String| HeuristicsError::Rules { line, message };
            let f: Vec<&str> = l.split('|').map(str::trim).collect();
            if f.len() != 5 {
                return Err(err(format!("expected 5 fields, found {}", f.len())));
            }
            let index: u8 = f[0].parse().map_err(|_| err(format!("bad index {:?}", f[0])))?;
            let tag = TriggerTag::from_name(f[1]).ok_or_else(|| err(format!("unknown tag {:?}", f[1])))?;
            if tag.index() != index {
                return Err(err(format!("{tag} belongs at index {}", tag.index())));
            }
            let mandatory = kinds(f[2], line)?;
            let advisory: BTreeSet<_> = kinds(f[3], line)?.difference(&mandatory).copied().collect();
            if mandatory.is_empty() && advisory.is_empty() {
                return Err(err("rule requires nothing".into()));
            }
            let cues = f[4].split(',').map(|s| s.trim().to_lowercase()).filter(|s| !s.is_empty()).collect();
            if rules.insert(tag, Rule { index, tag, mandatory, advisory, cues }).is_some() {
                return Err(err(format!("{tag} listed twice")));
            }
        }
        if let Some(t) = TriggerTag::ALL.into_iter().find(|t| !rules.contains_key(t)) {
            return Err(HeuristicsError::Rules { line: text.lines().count(), message: format!("missing rule for {t}") });
        }
        Ok(RuleSet { rules })
    }

    pub fn builtin() -> &'static RuleSet {
        static RULES: OnceLock<RuleSet> = OnceLock::new();
        RULES.get_or_init(|| RuleSet::parse(BUILTIN).expect("shipped rules parse"))
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }

    pub fn rule(&self, tag: TriggerTag) -> &Rule {
        &self.rules[&tag]
    }

    /// Union of the rules fired by `triggers`; a kind that is mandatory
    /// for any trigger is not also listed as advisory.
    pub fn requirements_for<T: Into<Trigger>>(&self, triggers: impl IntoIterator<Item = T>) -> Requirement {
        let mut req = Requirement::default();
        for t in triggers {
            let t: Trigger = t.into();
            let rule = self.rule(t.tag);
            let promoted = t.cue.as_ref().is_some_and(|c| rule.cues.contains(c));
            for k in &rule.mandatory {
                req.mandatory.entry(*k).or_default().insert(rule.index);
            }
            let target = if promoted { &mut req.mandatory } else { &mut req.advisory };
            for k in &rule.advisory {
                target.entry(*k).or_default().insert(rule.index);
            }
        }
        let Requirement { mandatory, advisory } = &mut req;
        advisory.retain(|k, _| !mandatory.contains_key(k));
        req
    }
}

/// Shipped rules applied to `triggers`.
pub fn requirements_for<T: Into<Trigger>>(triggers: impl IntoIterator<Item = T>) -> Requirement {
    RuleSet::builtin().requirements_for(triggers)
}

pub fn check(d: &Diagram, req: &Requirement) -> CheckReport {
    let entry = |level: Level| {
        move |(kind, hs): (&RequiredKind, &BTreeSet<u8>)| CheckEntry {
            kind: *kind,
            level,
            count: kind.census(d),
            heuristics: hs.clone(),
        }
    };
    let entries = req
        .mandatory
        .iter()
        .map(entry(Level::Mandatory))
        .chain(req.advisory.iter().map(entry(Level::Advisory)))
        .collect();
    CheckReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn kinds_of(m: &BTreeMap<RequiredKind, BTreeSet<u8>>) -> BTreeSet<String> {
        m.keys().map(|k| k.name()).collect()
    }

    #[test]
    fn fourteen_rules_load() {
        let rules: Vec<_> = RuleSet::builtin().rules().collect();
        assert_eq!(rules.len(), 14);
        for (i, r) in rules.iter().enumerate() {
            assert_eq!(usize::from(r.index), i + 1);
        }
    }

    #[test]
    fn because_makes_causation_mandatory() {
        let r = requirements_for([Trigger::with_cue(TriggerTag::CausalConnective, "Because")]);
        assert_eq!(kinds_of(&r.mandatory), BTreeSet::from(["CausationArrow".to_string()]));
        assert!(r.advisory.is_empty());
        let r = requirements_for([Trigger::with_cue(TriggerTag::CausalConnective, "since")]);
        assert!(r.mandatory.is_empty());
        assert_eq!(kinds_of(&r.advisory), BTreeSet::from(["CausationArrow".to_string()]));
    }

    #[test]
    fn lift_carry_and_empty() {
        let r = requirements_for([TriggerTag::LiftCarry]);
        assert_eq!(kinds_of(&r.mandatory), BTreeSet::from(["ForceArrow".to_string(), "MotionArrow".to_string()]));
        assert!(requirements_for(Vec::<TriggerTag>::new()).is_empty());
    }

    #[test]
    fn ws11_satisfies_gravity() {
        let d = parse(include_str!("../data/fixtures/ws11.tum")).unwrap();
        assert!(crate::grammar::validate(&d).is_empty());
        let report = check(&d, &requirements_for([TriggerTag::DownwardGravity, TriggerTag::SpatialRelation]));
        assert!(report.satisfied(), "{report:?}");
    }

    #[test]
    fn empty_diagram_misses_causation() {
        let req = requirements_for([Trigger::with_cue(TriggerTag::CausalConnective, "because")]);
        let report = check(&Diagram::new(), &req);
        assert!(!report.satisfied());
        assert_eq!(report.missing(Level::Mandatory), [RequiredKind::Edge(EdgeKind::Causation)]);
    }

    #[test]
    fn names_round_trip() {
        let mut all: Vec<RequiredKind> = ElementKind::ALL.into_iter().map(RequiredKind::Element).collect();
        all.extend(EdgeKind::ALL.into_iter().map(RequiredKind::Edge));
        all.extend([RequiredKind::AnyBox, RequiredKind::AnyMarker, RequiredKind::AnyObjectCircle]);
        for k in all {
            assert_eq!(RequiredKind::from_name(&k.name()), Some(k));
        }
        for t in TriggerTag::ALL {
            assert_eq!(Trigger::parse(t.name()).unwrap().tag, t);
        }
        assert!(Trigger::parse("sneeze").is_err());
    }

    #[test]
    fn bad_rule_files() {
        assert!(RuleSet::parse("1 | barrier | MotionArrow | |\n").is_err());
        let swapped = BUILTIN.replace("1  | barrier", "2  | barrier");
        assert!(RuleSet::parse(&swapped).is_err());
        let unknown = BUILTIN.replace("CorrelationBox", "Teapot");
        assert!(matches!(RuleSet::parse(&unknown), Err(HeuristicsError::Rules { line: 4, .. })));
    }

    #[test]
    fn check_agrees_with_census() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let req = requirements_for(TriggerTag::ALL.map(Trigger::from));
        for _ in 0..100 {
            let d = crate::random::random_diagram(&mut rng, 8);
            for e in check(&d, &req).entries {
                let direct = match e.kind {
                    RequiredKind::Edge(k) => d.edges().values().filter(|x| x.kind() == k).count(),
                    RequiredKind::AnyBox => {
                        [ElementKind::VerbatimBox, ElementKind::DescriptiveBox, ElementKind::AggregationBox, ElementKind::CAAggregationBox]
                            .iter()
                            .map(|k| d.count_kind(*k))
                            .sum()
                    }
                    RequiredKind::AnyMarker => {
                        [ElementKind::Marker0D, ElementKind::Marker1D, ElementKind::Marker2D].iter().map(|k| d.count_kind(*k)).sum()
                    }
                    RequiredKind::AnyObjectCircle => [
                        ElementKind::PhysicalObjectCircle,
                        ElementKind::DataObjectCircle,
                        ElementKind::CAObjectCircle,
                    ]
                    .iter()
                    .map(|k| d.count_kind(*k))
                    .sum(),
                    RequiredKind::Element(k) => d.count_kind(k),
                };
                assert_eq!(e.count, direct, "{}", e.kind);
            }
        }
    }

    fn tags() -> impl Strategy<Value = Vec<Trigger>> {
        let one = (prop::sample::select(TriggerTag::ALL.to_vec()), prop::option::of(prop::sample::select(vec!["because", "so", "as"])))
            .prop_map(|(t, c)| match c {
                Some(c) => Trigger::with_cue(t, c),
                None => Trigger::from(t),
            });
        prop::collection::vec(one, 0..6)
    }

    proptest! {
        #[test]
        fn monotone(a in tags(), b in tags()) {
            let small = requirements_for(a.clone());
            let big = requirements_for(a.into_iter().chain(b));
            let all = |r: &Requirement| r.mandatory.keys().chain(r.advisory.keys()).copied().collect::<BTreeSet<_>>();
            prop_assert!(all(&small).is_subset(&all(&big)));
            prop_assert!(small.mandatory.keys().all(|k| big.mandatory.contains_key(k)));
        }
    }
}
