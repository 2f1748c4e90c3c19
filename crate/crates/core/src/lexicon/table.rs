//! Text table format shared by lexicons and the modal table.
//!
//! ```text
//! # comment
//! @lang fr
//! aim_present,detached_object
//! lancer|W2|T,T
//! ```

use super::{check_schema, ConceptVector, Entry, Lexicon, LexiconError, Tri};

pub(crate) struct RawTable {
    pub language: Option<String>,
    pub schema: Vec<String>,
    pub rows: Vec<(usize, String, String, ConceptVector)>,
}

fn table_err(line: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Table { line, message: message.into() }
}

fn parse_entry(cell: &str) -> Option<Entry> {
    let cell = cell.trim();
    match cell.strip_prefix('(').and_then(|c| c.strip_suffix(')')) {
        Some(inner) => Tri::from_symbol(inner.trim()).map(Entry::implied),
        None => Tri::from_symbol(cell).map(Entry::new),
    }
}

pub(crate) fn parse_raw(text: &str) -> Result<RawTable, LexiconError> {
    let mut language = None;
    let mut schema: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(tag) = line.strip_prefix("@lang") {
            if schema.is_some() || language.is_some() {
                return Err(table_err(line_no, "@lang must precede the header and appear once"));
            }
            let tag = tag.trim();
            if tag.is_empty() {
                return Err(table_err(line_no, "empty language tag"));
            }
            language = Some(tag.to_string());
            continue;
        }
        let Some(names) = &schema else {
            if line.contains('|') {
                return Err(table_err(line_no, "expected header of attribute names before rows"));
            }
            let names: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
            if names.iter().any(String::is_empty) {
                return Err(table_err(line_no, "empty attribute name in header"));
            }
            check_schema(&names).map_err(|e| table_err(line_no, e.to_string()))?;
            schema = Some(names);
            continue;
        };
        let parts: Vec<&str> = line.split('|').collect();
        let [word, meaning, cells] = parts[..] else {
            return Err(table_err(line_no, "expected <word>|<meaning>|<cells>"));
        };
        let word = word.trim();
        if word.is_empty() {
            return Err(table_err(line_no, "empty word"));
        }
        let cells: Vec<&str> = if names.is_empty() && cells.trim().is_empty() { vec![] } else { cells.split(',').collect() };
        if cells.len() != names.len() {
            return Err(table_err(line_no, format!("expected {} cells, found {}", names.len(), cells.len())));
        }
        let entries = cells
            .iter()
            .map(|c| parse_entry(c).ok_or_else(|| table_err(line_no, format!("bad cell {:?}", c.trim()))))
            .collect::<Result<Vec<_>, _>>()?;
        let v = ConceptVector::new(names.iter().cloned().zip(entries)).expect("header checked");
        rows.push((line_no, word.to_string(), meaning.trim().to_string(), v));
    }
    let schema = schema.ok_or_else(|| table_err(text.lines().count().max(1), "missing header line"))?;
    Ok(RawTable { language, schema, rows })
}

pub fn parse_lexicon(text: &str) -> Result<Lexicon, LexiconError> {
    let raw = parse_raw(text)?;
    let mut lex = Lexicon::new(raw.language.as_deref(), raw.schema)?;
    for (line, w, m, v) in raw.rows {
        lex.insert(&w, &m, v).map_err(|e| table_err(line, e.to_string()))?;
    }
    Ok(lex)
}

pub fn write_lexicon(lex: &Lexicon) -> String {
    let mut out = String::new();
    if let Some(l) = lex.language() {
        out.push_str(&format!("@lang {l}\n"));
    }
    out.push_str(&lex.schema().join(","));
    out.push('\n');
    for (w, m, v) in lex.iter() {
        let cells: Vec<String> = v.entries().iter().map(Entry::to_string).collect();
        out.push_str(&format!("{w}|{m}|{}\n", cells.join(",")));
    }
    out
}
