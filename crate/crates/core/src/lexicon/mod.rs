//! Concept vectors, lexicons and match-count word selection.
//!
//! A [`ConceptVector`] assigns TRUE, FALSE or DON'T CARE to each attribute of
//! a fixed schema. Two vectors match on a cell unless one says TRUE and the
//! other FALSE. Cells written in parentheses in a table are *implied*: they
//! are kept for display but never counted.

mod attitude;
mod modal;
mod table;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use attitude::{AttitudeCatalog, AttitudeCategory};
pub use modal::{modal_concepts, modal_icon, ActiveConcepts, ModalTable, MODAL_CONCEPTS, MODAL_VERBS};
pub use table::{parse_lexicon, write_lexicon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("schema mismatch: expected [{}], found [{}]", .expected.join(","), .found.join(","))]
    SchemaMismatch { expected: Vec<String>, found: Vec<String> },
    #[error("lexicon is empty")]
    EmptyLexicon,
    #[error("no modal row {verb:?} ({meaning:?})")]
    UnknownModalRow { verb: String, meaning: String },
    #[error("attribute {0:?} appears more than once")]
    DuplicateAttribute(String),
    #[error("entry {word:?} ({meaning:?}) appears more than once")]
    DuplicateEntry { word: String, meaning: String },
    #[error("unknown modal concept {0:?}")]
    UnknownConcept(String),
    #[error("line {line}: {message}")]
    Table { line: usize, message: String },
}

/// Three-valued attribute entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tri {
    True,
    False,
    DontCare,
}

impl Tri {
    pub const ALL: [Tri; 3] = [Tri::True, Tri::False, Tri::DontCare];

    pub fn symbol(self) -> &'static str {
        match self {
            Tri::True => "T",
            Tri::False => "F",
            Tri::DontCare => "DC",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Tri> {
        match s {
            "T" => Some(Tri::True),
            "F" => Some(Tri::False),
            "DC" => Some(Tri::DontCare),
            _ => None,
        }
    }

    /// TRUE against FALSE is the only mismatch.
    pub fn compatible(self, other: Tri) -> bool {
        !matches!((self, other), (Tri::True, Tri::False) | (Tri::False, Tri::True))
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Entry {
    pub value: Tri,
    pub implied: bool,
}

impl Entry {
    pub fn new(value: Tri) -> Self {
        Entry { value, implied: false }
    }

    pub fn implied(value: Tri) -> Self {
        Entry { value, implied: true }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.implied {
            write!(f, "({})", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// Ordered attribute names with one entry each.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConceptVector {
    schema: Vec<String>,
    entries: Vec<Entry>,
}

impl ConceptVector {
    pub fn new(pairs: impl IntoIterator<Item = (String, Entry)>) -> Result<Self, LexiconError> {
        let (schema, entries): (Vec<String>, Vec<Entry>) = pairs.into_iter().unzip();
        check_schema(&schema)?;
        Ok(ConceptVector { schema, entries })
    }

    /// All entries explicit.
    pub fn from_values<S: AsRef<str>>(names: &[S], values: &[Tri]) -> Result<Self, LexiconError> {
        if names.len() != values.len() {
            return Err(LexiconError::SchemaMismatch {
                expected: names.iter().map(|s| s.as_ref().to_string()).collect(),
                found: values.iter().map(|v| v.to_string()).collect(),
            });
        }
        Self::new(names.iter().map(|n| n.as_ref().to_string()).zip(values.iter().map(|v| Entry::new(*v))))
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.schema.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schema.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<Entry> {
        self.schema.iter().position(|n| n == name).map(|i| self.entries[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Entry)> {
        self.schema.iter().map(String::as_str).zip(self.entries.iter().copied())
    }

    /// Replaces the entry at `index`.
    pub fn with_entry(mut self, index: usize, entry: Entry) -> Self {
        self.entries[index] = entry;
        self
    }
}

pub(crate) fn check_schema(schema: &[String]) -> Result<(), LexiconError> {
    let mut seen = std::collections::BTreeSet::new();
    for n in schema {
        if !seen.insert(n.as_str()) {
            return Err(LexiconError::DuplicateAttribute(n.clone()));
        }
    }
    Ok(())
}

/// Number of cells where both entries are explicit and compatible.
pub fn match_count(context: &ConceptVector, candidate: &ConceptVector) -> Result<usize, LexiconError> {
    if context.schema != candidate.schema {
        return Err(LexiconError::SchemaMismatch { expected: context.schema.clone(), found: candidate.schema.clone() });
    }
    Ok(context
        .entries
        .iter()
        .zip(&candidate.entries)
        .filter(|(a, b)| !a.implied && !b.implied && a.value.compatible(b.value))
        .count())
}

/// Words of one language, keyed by (word, meaning), over a shared schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    language: Option<String>,
    schema: Vec<String>,
    entries: BTreeMap<(String, String), ConceptVector>,
}

impl Lexicon {
    pub fn new(language: Option<&str>, schema: Vec<String>) -> Result<Self, LexiconError> {
        check_schema(&schema)?;
        Ok(Lexicon { language: language.map(str::to_string), schema, entries: BTreeMap::new() })
    }

    pub fn insert(&mut self, word: &str, meaning: &str, v: ConceptVector) -> Result<(), LexiconError> {
        if v.schema != self.schema {
            return Err(LexiconError::SchemaMismatch { expected: self.schema.clone(), found: v.schema });
        }
        let key = (word.to_string(), meaning.to_string());
        if self.entries.contains_key(&key) {
            return Err(LexiconError::DuplicateEntry { word: key.0, meaning: key.1 });
        }
        self.entries.insert(key, v);
        Ok(())
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str, meaning: &str) -> Option<&ConceptVector> {
        self.entries.get(&(word.to_string(), meaning.to_string()))
    }

    /// Entries in (word, meaning) order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, &ConceptVector)> {
        self.entries.iter().map(|((w, m), v)| (w.as_str(), m.as_str(), v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranked {
    pub word: String,
    pub meaning: String,
    pub count: usize,
    /// Competition rank: one plus the number of strictly better entries.
    pub rank: usize,
    pub tied: bool,
}

/// All entries, best first; equal counts share a rank and are flagged.
pub fn select_word(context: &ConceptVector, lex: &Lexicon) -> Result<Vec<Ranked>, LexiconError> {
    if lex.is_empty() {
        return Err(LexiconError::EmptyLexicon);
    }
    let mut scored = lex
        .iter()
        .map(|(w, m, v)| match_count(context, v).map(|c| (c, w, m)))
        .collect::<Result<Vec<_>, _>>()?;
    scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| (a.1, a.2).cmp(&(b.1, b.2))));
    let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
    for (c, _, _) in &scored {
        *tally.entry(*c).or_default() += 1;
    }
    Ok(scored
        .iter()
        .map(|&(count, w, m)| Ranked {
            word: w.to_string(),
            meaning: m.to_string(),
            count,
            rank: 1 + tally.range(count + 1..).map(|(_, n)| n).sum::<usize>(),
            tied: tally[&count] > 1,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cv(vals: &[Tri]) -> ConceptVector {
        let names: Vec<String> = (0..vals.len()).map(|i| format!("a{i}")).collect();
        ConceptVector::from_values(&names, vals).unwrap()
    }

    fn throw_lexicon() -> Lexicon {
        let schema = vec!["aim_present".to_string(), "detached_object".to_string()];
        let mut lex = Lexicon::new(Some("fr"), schema.clone()).unwrap();
        lex.insert("jeter", "W1", ConceptVector::from_values(&schema, &[Tri::False, Tri::True]).unwrap()).unwrap();
        lex.insert("lancer", "W2", ConceptVector::from_values(&schema, &[Tri::True, Tri::True]).unwrap()).unwrap();
        lex
    }

    #[test]
    fn baseball_picks_lancer() {
        let lex = throw_lexicon();
        let ctx = ConceptVector::from_values(lex.schema(), &[Tri::True, Tri::True]).unwrap();
        let ranked = select_word(&ctx, &lex).unwrap();
        assert_eq!(ranked[0].word, "lancer");
        assert_eq!((ranked[0].count, ranked[1].count), (2, 1));
        assert!(!ranked[0].tied);
    }

    #[test]
    fn cell_rule_over_all_pairs() {
        for a in Tri::ALL {
            for b in Tri::ALL {
                let expect = !(a == Tri::True && b == Tri::False || a == Tri::False && b == Tri::True);
                assert_eq!(match_count(&cv(&[a]), &cv(&[b])).unwrap(), usize::from(expect));
            }
        }
    }

    #[test]
    fn implied_cells_do_not_count() {
        let a = cv(&[Tri::True, Tri::True]);
        let b = cv(&[Tri::True, Tri::True]).with_entry(1, Entry::implied(Tri::True));
        assert_eq!(match_count(&a, &b).unwrap(), 1);
    }

    #[test]
    fn schema_mismatch() {
        assert!(matches!(match_count(&cv(&[Tri::True]), &cv(&[Tri::True, Tri::False])), Err(LexiconError::SchemaMismatch { .. })));
        let lex = throw_lexicon();
        assert!(select_word(&cv(&[Tri::True]), &lex).is_err());
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(
            ConceptVector::from_values(&["a", "a"], &[Tri::True, Tri::True]),
            Err(LexiconError::DuplicateAttribute(_))
        ));
        let mut lex = throw_lexicon();
        let v = lex.get("jeter", "W1").unwrap().clone();
        assert!(matches!(lex.insert("jeter", "W1", v), Err(LexiconError::DuplicateEntry { .. })));
    }

    #[test]
    fn empty_and_single() {
        let lex = Lexicon::new(None, vec!["a0".into()]).unwrap();
        assert_eq!(select_word(&cv(&[Tri::True]), &lex), Err(LexiconError::EmptyLexicon));
        let mut lex = lex;
        lex.insert("only", "", cv(&[Tri::False])).unwrap();
        let r = select_word(&cv(&[Tri::True]), &lex).unwrap();
        assert_eq!((r.len(), r[0].word.as_str(), r[0].rank, r[0].tied), (1, "only", 1, false));
    }

    #[test]
    fn ties_share_rank() {
        let mut lex = Lexicon::new(None, vec!["a0".into(), "a1".into()]).unwrap();
        lex.insert("b", "", cv(&[Tri::True, Tri::DontCare])).unwrap();
        lex.insert("a", "", cv(&[Tri::DontCare, Tri::True])).unwrap();
        lex.insert("c", "", cv(&[Tri::False, Tri::False])).unwrap();
        let r = select_word(&cv(&[Tri::True, Tri::True]), &lex).unwrap();
        let view: Vec<_> = r.iter().map(|x| (x.word.as_str(), x.rank, x.tied)).collect();
        assert_eq!(view, [("a", 1, true), ("b", 1, true), ("c", 3, false)]);
    }

    fn tri() -> impl Strategy<Value = Tri> {
        prop::sample::select(Tri::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn symmetric_and_bounded(pairs in prop::collection::vec((tri(), tri()), 0..12)) {
            let (a, b): (Vec<Tri>, Vec<Tri>) = pairs.into_iter().unzip();
            let (x, y) = (cv(&a), cv(&b));
            let n = match_count(&x, &y).unwrap();
            prop_assert_eq!(n, match_count(&y, &x).unwrap());
            prop_assert!(n <= a.len());
        }

        #[test]
        fn insertion_order_irrelevant(rows in prop::collection::vec(prop::collection::vec(tri(), 3), 1..8), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let ctx = cv(&[Tri::True, Tri::False, Tri::DontCare]);
            let schema: Vec<String> = (0..3).map(|i| format!("a{i}")).collect();
            let build = |order: &[usize]| {
                let mut lex = Lexicon::new(None, schema.clone()).unwrap();
                for &i in order {
                    lex.insert(&format!("w{i}"), "", cv(&rows[i])).unwrap();
                }
                select_word(&ctx, &lex).unwrap()
            };
            let mut order: Vec<usize> = (0..rows.len()).collect();
            let first = build(&order);
            order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(first, build(&order));
        }
    }
}
