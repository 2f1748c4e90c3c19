//! Modal verb table and its Swirly Array icon.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::model::{SwirlyCell, SwirlyPayload};

use super::table::parse_raw;
use super::{ConceptVector, LexiconError, Tri};

pub const MODAL_CONCEPTS: [&str; 17] = [
    "Ability",
    "Advice",
    "Formal Directive",
    "Formality",
    "Habit",
    "Ideal",
    "Intention",
    "Likelihood",
    "Obligation",
    "Offer",
    "Permission",
    "Possibility",
    "Prediction",
    "Request",
    "Suggestion",
    "Tense",
    "Willpower",
];

const ABBREVIATIONS: [&str; 17] =
    ["Abi", "Adv", "FDi", "For", "Hab", "Ide", "Int", "Lik", "Obl", "Off", "Per", "Pos", "Pre", "Req", "Sug", "Ten", "Wil"];

pub const MODAL_VERBS: [&str; 16] = [
    "be able to",
    "can",
    "could",
    "had best",
    "had better",
    "have got to",
    "have to",
    "may",
    "might",
    "must",
    "needn't",
    "ought to",
    "shall",
    "should",
    "will",
    "would",
];

const BUILTIN: &str = include_str!("../../data/modal.table");

/// Cell id used in the modal icon for a concept.
pub fn abbreviation(concept: &str) -> Option<&'static str> {
    MODAL_CONCEPTS.iter().position(|c| *c == concept).map(|i| ABBREVIATIONS[i])
}

/// Rows keyed by (verb, meaning) over a closed concept schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalTable {
    schema: Vec<String>,
    rows: BTreeMap<(String, String), ConceptVector>,
}

impl ModalTable {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let raw = parse_raw(text)?;
        if let Some(bad) = raw.schema.iter().find(|c| !MODAL_CONCEPTS.contains(&c.as_str())) {
            return Err(LexiconError::UnknownConcept(bad.clone()));
        }
        let mut rows = BTreeMap::new();
        for (line, verb, meaning, v) in raw.rows {
            if rows.insert((verb.clone(), meaning.clone()), v).is_some() {
                return Err(LexiconError::Table {
                    line,
                    message: LexiconError::DuplicateEntry { word: verb, meaning }.to_string(),
                });
            }
        }
        Ok(ModalTable { schema: raw.schema, rows })
    }

    /// The shipped table.
    pub fn builtin() -> &'static ModalTable {
        static TABLE: OnceLock<ModalTable> = OnceLock::new();
        TABLE.get_or_init(|| ModalTable::parse(BUILTIN).expect("shipped modal table parses"))
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn row(&self, verb: &str, meaning: &str) -> Result<&ConceptVector, LexiconError> {
        self.rows.get(&(verb.to_string(), meaning.to_string())).ok_or_else(|| LexiconError::UnknownModalRow {
            verb: verb.to_string(),
            meaning: meaning.to_string(),
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = (&str, &str, &ConceptVector)> {
        self.rows.iter().map(|((v, m), c)| (v.as_str(), m.as_str(), c))
    }

    pub fn verbs(&self) -> BTreeSet<&str> {
        self.rows.keys().map(|(v, _)| v.as_str()).collect()
    }

    pub fn concepts(&self, verb: &str, meaning: &str) -> Result<ActiveConcepts, LexiconError> {
        let row = self.row(verb, meaning)?;
        let concepts =
            row.iter().filter(|(_, e)| e.value == Tri::True).map(|(n, e)| (n.to_string(), e.implied)).collect();
        Ok(ActiveConcepts { concepts })
    }

    pub fn icon(&self, verb: &str, meaning: &str) -> Result<SwirlyPayload, LexiconError> {
        let active = self.concepts(verb, meaning)?;
        let ids = active.names().into_iter().filter_map(abbreviation).map(str::to_string).collect();
        Ok(SwirlyPayload::new(icon_layout(), ids).expect("layout declares every concept"))
    }
}

/// Concepts switched on by one row; `true` marks an implied cell.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ActiveConcepts {
    pub concepts: BTreeMap<String, bool>,
}

impl ActiveConcepts {
    pub fn names(&self) -> BTreeSet<&str> {
        self.concepts.keys().map(String::as_str).collect()
    }

    pub fn explicit(&self) -> BTreeSet<&str> {
        self.concepts.iter().filter(|(_, i)| !**i).map(|(n, _)| n.as_str()).collect()
    }

    pub fn implied(&self) -> BTreeSet<&str> {
        self.concepts.iter().filter(|(_, i)| **i).map(|(n, _)| n.as_str()).collect()
    }
}

/// One cell per concept on an outward spiral; identical for every row.
fn icon_layout() -> Vec<SwirlyCell> {
    let round = |v: f64| (v * 1000.0).round() / 1000.0;
    ABBREVIATIONS
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let (r, theta) = (1.0 + 0.25 * i as f64, 0.8 * i as f64);
            SwirlyCell { id: id.to_string(), x: round(r * theta.cos()), y: round(r * theta.sin()) }
        })
        .collect()
}

/// Concepts of a row in the shipped table.
pub fn modal_concepts(verb: &str, meaning: &str) -> Result<ActiveConcepts, LexiconError> {
    ModalTable::builtin().concepts(verb, meaning)
}

/// Icon for a row in the shipped table.
pub fn modal_icon(verb: &str, meaning: &str) -> Result<SwirlyPayload, LexiconError> {
    ModalTable::builtin().icon(verb, meaning)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn can_permission() {
        let a = modal_concepts("can", "permission").unwrap();
        assert_eq!(a.names(), BTreeSet::from(["Permission", "Request"]));
        assert!(a.implied().is_empty());
        let icon = modal_icon("can", "permission").unwrap();
        assert_eq!(icon.active(), &BTreeSet::from(["Per".to_string(), "Req".to_string()]));
    }

    #[test]
    fn be_able_to_ability() {
        let a = modal_concepts("be able to", "ability").unwrap();
        assert_eq!(a.explicit(), BTreeSet::from(["Ability"]));
        assert_eq!(a.implied(), BTreeSet::from(["Request"]));
    }

    #[test]
    fn unknown_row() {
        assert!(matches!(modal_concepts("gonna", "future"), Err(LexiconError::UnknownModalRow { .. })));
        assert!(modal_icon("can", "teleport").is_err());
    }

    #[test]
    fn builtin_covers_all_verbs() {
        let t = ModalTable::builtin();
        assert_eq!(t.verbs(), MODAL_VERBS.into_iter().collect());
        assert_eq!(t.schema(), MODAL_CONCEPTS);
    }

    #[test]
    fn layout_shared_and_distinct_rows_differ() {
        let t = ModalTable::builtin();
        let rows: Vec<_> = t.rows().collect();
        let layout = t.icon(rows[0].0, rows[0].1).unwrap().cells().to_vec();
        for (i, (v, m, c)) in rows.iter().enumerate() {
            let icon = t.icon(v, m).unwrap();
            assert_eq!(icon.cells(), layout);
            for (v2, m2, c2) in &rows[i + 1..] {
                if c != c2 {
                    assert_ne!(icon.active(), t.icon(v2, m2).unwrap().active(), "{v}/{m} vs {v2}/{m2}");
                }
            }
        }
    }

    #[test]
    fn closed_schema() {
        assert_eq!(ModalTable::parse("Ability,Sarcasm\n"), Err(LexiconError::UnknownConcept("Sarcasm".into())));
        assert!(ModalTable::parse("Ability\ncan|ability|T\n").is_ok());
    }
}
