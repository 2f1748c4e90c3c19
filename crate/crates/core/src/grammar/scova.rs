use std::collections::BTreeSet;
use std::fmt;

use crate::model::{EdgeKind, ElementKind};

use super::GrammarError;

/// The five Basic Building Blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicKind {
    S,
    C,
    O,
    V,
    A,
}

impl BasicKind {
    pub const ALL: [BasicKind; 5] = [BasicKind::S, BasicKind::C, BasicKind::O, BasicKind::V, BasicKind::A];

    pub fn letter(self) -> char {
        match self {
            BasicKind::S => 'S',
            BasicKind::C => 'C',
            BasicKind::O => 'O',
            BasicKind::V => 'V',
            BasicKind::A => 'A',
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            BasicKind::S => "system-like",
            BasicKind::C => "change-like",
            BasicKind::O => "object-like",
            BasicKind::V => "value-like",
            BasicKind::A => "attribute-like",
        }
    }
}

impl fmt::Display for BasicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Any Building Block, including the ones that are not diagram elements
/// (arrows, groups, attribute lines, wildcards, range caps) and the
/// generalized blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    Element(ElementKind),
    Edge(EdgeKind),
    StateDiagram,
    SplitTime,
    AttributeLine,
    Wildcard,
    RangeCap,
    Nonquan,
    Iam,
    ChangeArrow,
}

impl BlockKind {
    /// Every concrete block; excludes the generalized ones.
    pub fn all_concrete() -> Vec<BlockKind> {
        let mut v: Vec<BlockKind> = ElementKind::ALL.into_iter().map(BlockKind::Element).collect();
        v.extend(EdgeKind::ALL.into_iter().map(BlockKind::Edge));
        v.extend([
            BlockKind::StateDiagram,
            BlockKind::SplitTime,
            BlockKind::AttributeLine,
            BlockKind::Wildcard,
            BlockKind::RangeCap,
        ]);
        v
    }

    pub fn is_generalized(self) -> bool {
        matches!(self, BlockKind::Nonquan | BlockKind::Iam | BlockKind::ChangeArrow)
    }

    pub fn name(self) -> String {
        match self {
            BlockKind::Element(k) => k.name().to_string(),
            BlockKind::Edge(k @ (EdgeKind::Tube | EdgeKind::Relationship)) => k.name().to_string(),
            BlockKind::Edge(k) => format!("{}Arrow", k.name()),
            BlockKind::StateDiagram => "StateDiagram".into(),
            BlockKind::SplitTime => "SplitTime".into(),
            BlockKind::AttributeLine => "AttributeLine".into(),
            BlockKind::Wildcard => "Wildcard".into(),
            BlockKind::RangeCap => "RangeCap".into(),
            BlockKind::Nonquan => "Nonquan".into(),
            BlockKind::Iam => "IAM".into(),
            BlockKind::ChangeArrow => "ChangeArrow".into(),
        }
    }

    /// Accepts the names produced by [`BlockKind::name`] plus a few
    /// common spellings (`Motion`, `PathwayTube`, `RelationshipMarker`,
    /// `StateDiagramGroup`, `SplitTimeArrow`).
    pub fn from_name(s: &str) -> Option<Self> {
        if let Some(k) = ElementKind::from_name(s) {
            return Some(BlockKind::Element(k));
        }
        let base = s.strip_suffix("Arrow").unwrap_or(s);
        if let Some(k) = EdgeKind::from_name(base) {
            return Some(BlockKind::Edge(k));
        }
        Some(match s {
            "PathwayTube" => BlockKind::Edge(EdgeKind::Tube),
            "RelationshipMarker" => BlockKind::Edge(EdgeKind::Relationship),
            "StateDiagram" | "StateDiagramGroup" => BlockKind::StateDiagram,
            "SplitTime" | "SplitTimeArrow" | "SplitTimeGroup" => BlockKind::SplitTime,
            "AttributeLine" => BlockKind::AttributeLine,
            "Wildcard" => BlockKind::Wildcard,
            "RangeCap" => BlockKind::RangeCap,
            "Nonquan" => BlockKind::Nonquan,
            "IAM" => BlockKind::Iam,
            "ChangeArrow" => BlockKind::ChangeArrow,
            _ => return None,
        })
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Buckets for the convenience blocks that have no natural SCOVA home.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScovaConfig {
    pub label_string: BasicKind,
    pub zoom_box: BasicKind,
}

impl Default for ScovaConfig {
    fn default() -> Self {
        ScovaConfig { label_string: BasicKind::O, zoom_box: BasicKind::O }
    }
}

pub fn scova_classify(kind: BlockKind) -> Result<BasicKind, GrammarError> {
    scova_classify_with(kind, &ScovaConfig::default())
}

pub fn scova_classify_with(kind: BlockKind, cfg: &ScovaConfig) -> Result<BasicKind, GrammarError> {
    use ElementKind as K;
    Ok(match kind {
        BlockKind::Nonquan | BlockKind::Iam | BlockKind::ChangeArrow => {
            return Err(GrammarError::UnknownKind(kind.name()))
        }
        BlockKind::Edge(e) if e.is_change() => BasicKind::C,
        BlockKind::Edge(_) => BasicKind::O,
        BlockKind::StateDiagram | BlockKind::SplitTime => BasicKind::S,
        BlockKind::AttributeLine => BasicKind::A,
        BlockKind::Wildcard | BlockKind::RangeCap => BasicKind::V,
        BlockKind::Element(k) => match k {
            K::CorrelationBox | K::TimeAnchor => BasicKind::C,
            K::AttendRing => BasicKind::A,
            K::ValueBar => BasicKind::V,
            K::DataSetBox | K::MotivationTriangle | K::RobinsonIcon | K::ModalVerbIcon => BasicKind::S,
            K::LabelString => cfg.label_string,
            K::ZoomBoxPair => cfg.zoom_box,
            _ => BasicKind::O,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generalization {
    Nonquan,
    Iam,
    ChangeArrow,
    Other,
}

impl Generalization {
    pub fn name(self) -> &'static str {
        match self {
            Generalization::Nonquan => "Nonquan",
            Generalization::Iam => "IAM",
            Generalization::ChangeArrow => "ChangeArrow",
            Generalization::Other => "Other",
        }
    }
}

/// Which generalized blocks `kind` falls under. Location Boxes are both
/// Nonquans and IAMs.
pub fn generalize(kind: BlockKind) -> BTreeSet<Generalization> {
    let mut out = BTreeSet::new();
    match kind {
        BlockKind::Nonquan => {
            out.insert(Generalization::Nonquan);
        }
        BlockKind::Iam | BlockKind::StateDiagram => {
            out.insert(Generalization::Iam);
        }
        BlockKind::ChangeArrow => {
            out.insert(Generalization::ChangeArrow);
        }
        BlockKind::Edge(e) if e.is_change() => {
            out.insert(Generalization::ChangeArrow);
        }
        BlockKind::Element(k) => {
            if k.is_nonquan() {
                out.insert(Generalization::Nonquan);
            }
            if k.is_location_box() {
                out.insert(Generalization::Iam);
            }
        }
        _ => {}
    }
    if out.is_empty() {
        out.insert(Generalization::Other);
    }
    out
}
