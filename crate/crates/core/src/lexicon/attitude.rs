//! Propositional attitude categories.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{AttributeBinding, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttitudeCategory {
    EmotionalMotivation,
    GeneralMotivation,
    Cognitive,
    Communication,
    Grammatical,
}

impl AttitudeCategory {
    pub const ALL: [AttitudeCategory; 5] = [
        AttitudeCategory::EmotionalMotivation,
        AttitudeCategory::GeneralMotivation,
        AttitudeCategory::Cognitive,
        AttitudeCategory::Communication,
        AttitudeCategory::Grammatical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AttitudeCategory::EmotionalMotivation => "emotional motivation",
            AttitudeCategory::GeneralMotivation => "general motivation",
            AttitudeCategory::Cognitive => "cognitive",
            AttitudeCategory::Communication => "communication",
            AttitudeCategory::Grammatical => "grammatical",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttitudeCatalog {
    categories: BTreeMap<AttitudeCategory, BTreeSet<String>>,
}

impl Default for AttitudeCatalog {
    fn default() -> Self {
        use AttitudeCategory::*;
        let table: [(AttitudeCategory, &[&str]); 5] = [
            (EmotionalMotivation, &["fear", "hope"]),
            (GeneralMotivation, &["desire", "intend", "want", "wish"]),
            (Cognitive, &["believe", "consider", "deny", "doubt", "imagine", "judge", "know", "perceive"]),
            (Communication, &["assert", "inform"]),
            (Grammatical, &["command"]),
        ];
        let categories = table.into_iter().map(|(c, names)| (c, names.iter().map(|s| s.to_string()).collect())).collect();
        AttitudeCatalog { categories }
    }
}

impl AttitudeCatalog {
    pub fn attitudes(&self, category: AttitudeCategory) -> &BTreeSet<String> {
        &self.categories[&category]
    }

    pub fn category_of(&self, attitude: &str) -> Option<AttitudeCategory> {
        self.categories.iter().find(|(_, s)| s.contains(attitude)).map(|(c, _)| *c)
    }

    pub fn all(&self) -> impl Iterator<Item = (AttitudeCategory, &str)> {
        self.categories.iter().flat_map(|(c, s)| s.iter().map(move |n| (*c, n.as_str())))
    }

    /// Text binding such as `believe = "true"` for an Aggregation Box holding the proposition.
    pub fn binding(&self, attitude: &str, holds: bool) -> Option<AttributeBinding> {
        self.category_of(attitude)?;
        AttributeBinding::named(attitude, Value::Text(holds.to_string())).ok()
    }
}
