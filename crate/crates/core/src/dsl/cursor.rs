//! Character cursor over a single line, with value parsing.

use crate::model::{Cap, Existence, Range, Triangular, Value, Wildcard};

use super::{ParseError, SourceSpan};

pub(crate) struct Cursor<'a> {
    line: &'a str,
    pos: usize,
    line_no: usize,
}

pub(crate) type PResult<T> = Result<T, ParseError>;

impl<'a> Cursor<'a> {
    pub fn new(line: &'a str, line_no: usize) -> Self {
        Cursor { line, pos: 0, line_no }
    }

    fn column_of(&self, byte: usize) -> usize {
        self.line[..byte].chars().count() + 1
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn span_from(&self, start: usize) -> SourceSpan {
        let s = self.column_of(start);
        let e = self.column_of(self.pos).max(s);
        SourceSpan { line: self.line_no, start: s, end: e }
    }

    /// Span of the next token, or of the end of line.
    pub fn here(&self) -> SourceSpan {
        let end = self.pos + self.rest().find(char::is_whitespace).unwrap_or(self.rest().len());
        let s = self.column_of(self.pos);
        SourceSpan { line: self.line_no, start: s, end: self.column_of(end).max(s) }
    }

    pub fn rest(&self) -> &'a str {
        &self.line[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.bump();
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    pub fn error(&self, expected: &str) -> ParseError {
        let found = match self.rest().split_whitespace().next() {
            Some(tok) => format!("{:?}", truncate(tok)),
            None => "end of line".to_string(),
        };
        ParseError { span: self.here(), expected: expected.to_string(), found }
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// A run of `[A-Za-z0-9_.-]`, possibly empty.
    pub fn word(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')) {
            self.bump();
        }
        &self.line[start..self.pos]
    }

    pub fn expect_word(&mut self, what: &str) -> PResult<(&'a str, SourceSpan)> {
        self.skip_ws();
        let start = self.pos;
        let w = self.word();
        if w.is_empty() {
            return Err(self.error(what));
        }
        Ok((w, self.span_from(start)))
    }

    /// Everything up to the next whitespace.
    pub fn token(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if !c.is_whitespace()) {
            self.bump();
        }
        &self.line[start..self.pos]
    }

    pub fn string(&mut self) -> PResult<String> {
        self.expect('"')?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error("closing '\"'")),
                Some('"') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('"') => out.push('"'),
                    Some('\\') => out.push('\\'),
                    Some('n') => out.push('\n'),
                    Some('r') => out.push('\r'),
                    Some('t') => out.push('\t'),
                    _ => return Err(self.error("escape \\\" \\\\ \\n \\r or \\t")),
                },
                Some(c) => out.push(c),
            }
        }
    }

    pub fn number(&mut self) -> PResult<f64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-')) {
            self.bump();
        }
        let text = &self.line[start..self.pos];
        match text.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => {
                self.pos = start;
                Err(self.error("finite number"))
            }
        }
    }

    fn bound(&mut self, infinity: &str) -> PResult<Option<f64>> {
        if self.eat_str(infinity) {
            Ok(None)
        } else {
            self.number().map(Some)
        }
    }

    fn range_body(&mut self) -> PResult<Range> {
        let lo_cap = match self.bump() {
            Some('[') => Cap::Inclusive,
            Some('(') => Cap::Exclusive,
            _ => return Err(self.error("'[' or '('")),
        };
        let start = self.pos;
        let lo = self.bound("-inf")?;
        self.expect(',')?;
        let hi = self.bound("inf")?;
        let hi_cap = match self.bump() {
            Some(']') => Cap::Inclusive,
            Some(')') => Cap::Exclusive,
            _ => return Err(self.error("']' or ')'")),
        };
        Range::new(lo, hi, lo_cap, hi_cap).map_err(|e| ParseError {
            span: self.span_from(start),
            expected: "ordered range bounds".into(),
            found: e.to_string(),
        })
    }

    /// Parses one value in text-format syntax.
    pub fn value(&mut self) -> PResult<Value> {
        let start = self.pos;
        let v = match self.peek() {
            Some('"') => Value::Text(self.string()?),
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => Value::number(self.number()?),
            Some(c) if c.is_ascii_alphabetic() => {
                let w = self.word();
                if let Some(wc) = Wildcard::from_keyword(w) {
                    Value::Wildcard(wc)
                } else {
                    match w {
                        "range" => Value::Range(self.range_body()?),
                        "ball" => Value::BallInRange(self.range_body()?),
                        "exist" => {
                            self.expect('(')?;
                            let n = self.number()?;
                            self.expect(')')?;
                            let e = Existence::new(n).map_err(|e| self.invalid(start, e))?;
                            Value::ExistenceLevel(e)
                        }
                        "qty" => {
                            self.expect('(')?;
                            let n = self.number()?;
                            self.expect(',')?;
                            let unit = self.string()?;
                            self.expect(')')?;
                            Value::Scalar { value: n, unit: Some(unit) }
                        }
                        "fuzzy" => {
                            self.expect('(')?;
                            let name = self.string()?;
                            let mut pts = [0.0; 3];
                            for p in &mut pts {
                                self.expect(',')?;
                                *p = self.number()?;
                            }
                            self.expect(')')?;
                            let m = Triangular::new(pts[0], pts[1], pts[2]).map_err(|e| self.invalid(start, e))?;
                            Value::FuzzyLabel { name, membership: m }
                        }
                        _ => {
                            self.pos = start;
                            return Err(self.error("value"));
                        }
                    }
                }
            }
            _ => return Err(self.error("value")),
        };
        v.check().map_err(|e| self.invalid(start, e))?;
        Ok(v)
    }

    fn invalid(&self, start: usize, e: impl std::fmt::Display) -> ParseError {
        ParseError { span: self.span_from(start), expected: "valid value".into(), found: e.to_string() }
    }
}

fn truncate(s: &str) -> String {
    s.chars().take(40).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(s: &str) -> PResult<Value> {
        let mut c = Cursor::new(s, 1);
        let v = c.value()?;
        assert!(c.at_end(), "trailing input in {s:?}");
        Ok(v)
    }

    #[test]
    fn value_forms_round_trip() {
        for s in [
            "\"quick\"",
            "85",
            "-0.5",
            "DK",
            "STAR",
            "range[-5,5]",
            "range(-inf,5)",
            "range[0,inf)",
            "ball[1,2]",
            "exist(0.5)",
            "qty(25,\"kg\")",
            "fuzzy(\"few\",0,0.1,0.3)",
            "\"a \\\"b\\\" \\\\ \\n\"",
        ] {
            let v = value(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_values() {
        for s in ["range[5,1]", "exist(2)", "1e999", "unknown", "\"open", "range[1,2", "fuzzy(\"x\",3,2,1)"] {
            assert!(value(s).is_err(), "{s}");
        }
    }

    #[test]
    fn spans_are_one_based() {
        let mut c = Cursor::new("  bogus", 7);
        c.skip_ws();
        let e = c.value().unwrap_err();
        assert_eq!(e.span, SourceSpan { line: 7, start: 3, end: 8 });
    }
}
