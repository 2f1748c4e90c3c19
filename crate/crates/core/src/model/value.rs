//! Values that can sit on the right-hand side of an attribute binding.

use std::fmt;

use super::ModelError;

/// The wildcard values a binding may hold in place of a concrete value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Wildcard {
    /// `*`: any value, matches even zero values.
    Star,
    /// `+`: any value, at least one must be present.
    Plus,
    /// `?`: any value, zero or one.
    Opt,
    /// Don't know.
    DontKnow,
    /// Don't care.
    DontCare,
    /// Does not exist.
    DoesNotExist,
}

impl Wildcard {
    pub const ALL: [Wildcard; 6] = [
        Wildcard::Star,
        Wildcard::Plus,
        Wildcard::Opt,
        Wildcard::DontKnow,
        Wildcard::DontCare,
        Wildcard::DoesNotExist,
    ];

    /// Keyword used by the text format.
    pub fn keyword(self) -> &'static str {
        match self {
            Wildcard::Star => "STAR",
            Wildcard::Plus => "PLUS",
            Wildcard::Opt => "OPT",
            Wildcard::DontKnow => "DK",
            Wildcard::DontCare => "DC",
            Wildcard::DoesNotExist => "DNE",
        }
    }

    /// Symbol as drawn on a diagram.
    pub fn symbol(self) -> &'static str {
        match self {
            Wildcard::Star => "*",
            Wildcard::Plus => "+",
            Wildcard::Opt => "?",
            Wildcard::DontKnow => "DK",
            Wildcard::DontCare => "DC",
            Wildcard::DoesNotExist => "DNE",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Wildcard::ALL.into_iter().find(|w| w.keyword() == word)
    }
}

/// Whether a range end point is part of the range (`[`/`]`) or not (`(`/`)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cap {
    Inclusive,
    Exclusive,
}

/// A one-dimensional interval. `None` bounds are unbounded (the arrow tip
/// of a Value Bar).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    lo: Option<f64>,
    hi: Option<f64>,
    lo_cap: Cap,
    hi_cap: Cap,
}

impl Range {
    pub fn new(lo: Option<f64>, hi: Option<f64>, lo_cap: Cap, hi_cap: Cap) -> Result<Self, ModelError> {
        for b in [lo, hi].into_iter().flatten() {
            if !b.is_finite() {
                return Err(ModelError::InvalidValue(format!("range bound {b} is not finite")));
            }
        }
        if let (Some(l), Some(h)) = (lo, hi) {
            if l > h {
                return Err(ModelError::InvalidValue(format!("range lower bound {l} exceeds upper bound {h}")));
            }
        }
        Ok(Range { lo, hi, lo_cap, hi_cap })
    }

    pub fn inclusive(lo: f64, hi: f64) -> Result<Self, ModelError> {
        Range::new(Some(lo), Some(hi), Cap::Inclusive, Cap::Inclusive)
    }

    pub fn lo(&self) -> Option<f64> {
        self.lo
    }

    pub fn hi(&self) -> Option<f64> {
        self.hi
    }

    pub fn lo_cap(&self) -> Cap {
        self.lo_cap
    }

    pub fn hi_cap(&self) -> Cap {
        self.hi_cap
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = match (self.lo, self.lo_cap) {
            (None, _) => true,
            (Some(l), Cap::Inclusive) => x >= l,
            (Some(l), Cap::Exclusive) => x > l,
        };
        let below = match (self.hi, self.hi_cap) {
            (None, _) => true,
            (Some(h), Cap::Inclusive) => x <= h,
            (Some(h), Cap::Exclusive) => x < h,
        };
        above && below
    }
}

/// Triangular fuzzy membership function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangular {
    lo: f64,
    peak: f64,
    hi: f64,
}

impl Triangular {
    pub fn new(lo: f64, peak: f64, hi: f64) -> Result<Self, ModelError> {
        if !(lo.is_finite() && peak.is_finite() && hi.is_finite()) || lo > peak || peak > hi {
            return Err(ModelError::InvalidValue(format!(
                "triangular membership needs lo <= peak <= hi, got ({lo}, {peak}, {hi})"
            )));
        }
        Ok(Triangular { lo, peak, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Degree of membership of `x`, in `[0, 1]`.
    pub fn membership(&self, x: f64) -> f64 {
        if x.is_nan() || x < self.lo || x > self.hi {
            return 0.0;
        }
        if x == self.peak {
            return 1.0;
        }
        if x < self.peak {
            (x - self.lo) / (self.peak - self.lo)
        } else {
            (self.hi - x) / (self.hi - self.peak)
        }
    }
}

/// Existence level in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Existence(f64);

impl Existence {
    pub fn new(level: f64) -> Result<Self, ModelError> {
        if (0.0..=1.0).contains(&level) {
            Ok(Existence(level))
        } else {
            Err(ModelError::InvalidValue(format!("existence level {level} outside [0, 1]")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar { value: f64, unit: Option<String> },
    Text(String),
    ExistenceLevel(Existence),
    Range(Range),
    /// A ball free to roll anywhere within the range: one unknown point.
    BallInRange(Range),
    FuzzyLabel { name: String, membership: Triangular },
    Wildcard(Wildcard),
}

impl Value {
    pub fn number(value: f64) -> Self {
        Value::Scalar { value, unit: None }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    pub const DK: Value = Value::Wildcard(Wildcard::DontKnow);
    pub const DC: Value = Value::Wildcard(Wildcard::DontCare);
    pub const DNE: Value = Value::Wildcard(Wildcard::DoesNotExist);

    pub fn is_dont_know(&self) -> bool {
        matches!(self, Value::Wildcard(Wildcard::DontKnow))
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Value::Scalar { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Checks invariants that the public enum shape cannot enforce.
    pub fn check(&self) -> Result<(), ModelError> {
        match self {
            Value::Scalar { value, unit } => {
                if !value.is_finite() {
                    return Err(ModelError::InvalidValue(format!("scalar {value} is not finite")));
                }
                if let Some(u) = unit {
                    if u.is_empty() {
                        return Err(ModelError::InvalidValue("empty unit".into()));
                    }
                }
                Ok(())
            }
            Value::FuzzyLabel { name, .. } if name.is_empty() => {
                Err(ModelError::InvalidValue("fuzzy label needs a name".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Shortest decimal text that parses back to the same `f64`.
pub fn fmt_number(x: f64) -> String {
    format!("{x}")
}

/// Quotes and escapes a string for the text format.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn fmt_range(f: &mut fmt::Formatter<'_>, tag: &str, r: &Range) -> fmt::Result {
    let open = if r.lo_cap == Cap::Inclusive { '[' } else { '(' };
    let close = if r.hi_cap == Cap::Inclusive { ']' } else { ')' };
    let lo = r.lo.map_or_else(|| "-inf".to_string(), fmt_number);
    let hi = r.hi.map_or_else(|| "inf".to_string(), fmt_number);
    write!(f, "{tag}{open}{lo},{hi}{close}")
}

/// Text-format spelling of a value.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar { value, unit: None } => f.write_str(&fmt_number(*value)),
            Value::Scalar { value, unit: Some(u) } => write!(f, "qty({},{})", fmt_number(*value), quote(u)),
            Value::Text(t) => f.write_str(&quote(t)),
            Value::ExistenceLevel(e) => write!(f, "exist({})", fmt_number(e.get())),
            Value::Range(r) => fmt_range(f, "range", r),
            Value::BallInRange(r) => fmt_range(f, "ball", r),
            Value::FuzzyLabel { name, membership: m } => write!(
                f,
                "fuzzy({},{},{},{})",
                quote(name),
                fmt_number(m.lo),
                fmt_number(m.peak),
                fmt_number(m.hi)
            ),
            Value::Wildcard(w) => f.write_str(w.keyword()),
        }
    }
}

/// Left-hand side of a binding: a named attribute or the "don't know"
/// wildcard (`Don't Know = 85`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttrName {
    Named(String),
    DontKnow,
}

impl AttrName {
    pub fn named(s: impl Into<String>) -> Self {
        AttrName::Named(s.into())
    }

    pub fn as_named(&self) -> Option<&str> {
        match self {
            AttrName::Named(s) => Some(s),
            AttrName::DontKnow => None,
        }
    }
}

impl fmt::Display for AttrName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttrName::Named(s) => f.write_str(s),
            AttrName::DontKnow => f.write_str("DK"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeBinding {
    pub attribute: AttrName,
    pub value: Value,
}

impl AttributeBinding {
    pub fn new(attribute: AttrName, value: Value) -> Result<Self, ModelError> {
        let b = AttributeBinding { attribute, value };
        b.check()?;
        Ok(b)
    }

    pub fn named(attribute: impl Into<String>, value: Value) -> Result<Self, ModelError> {
        AttributeBinding::new(AttrName::named(attribute), value)
    }

    pub fn check(&self) -> Result<(), ModelError> {
        if let AttrName::Named(n) = &self.attribute {
            if n.is_empty() {
                return Err(ModelError::InvalidBinding("attribute name is empty".into()));
            }
        }
        if self.attribute == AttrName::DontKnow && self.value.is_dont_know() {
            return Err(ModelError::InvalidBinding(
                "attribute and value cannot both be don't-know".into(),
            ));
        }
        self.value.check()
    }
}

/// Tri-state result of a wildcard match. `Unknown` is what a don't-know
/// pattern yields: it neither matches nor fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchOutcome {
    Match,
    NoMatch,
    Unknown,
}

impl MatchOutcome {
    pub fn is_match(self) -> bool {
        self == MatchOutcome::Match
    }

    fn from_bool(b: bool) -> Self {
        if b {
            MatchOutcome::Match
        } else {
            MatchOutcome::NoMatch
        }
    }
}

/// Matches an observed value (absent when `None`) against a pattern.
pub fn wildcard_matches(pattern: &Value, observed: Option<&Value>) -> MatchOutcome {
    use Wildcard::*;

    // An observed DNE is the same as no value at all.
    let observed = observed.filter(|v| !matches!(v, Value::Wildcard(DoesNotExist)));

    match pattern {
        Value::Wildcard(DontCare) => MatchOutcome::Match,
        Value::Wildcard(DontKnow) => MatchOutcome::Unknown,
        Value::Wildcard(Star) | Value::Wildcard(Opt) => MatchOutcome::Match,
        Value::Wildcard(Plus) => MatchOutcome::from_bool(observed.is_some()),
        Value::Wildcard(DoesNotExist) => MatchOutcome::from_bool(observed.is_none()),
        concrete => {
            let Some(obs) = observed else {
                return MatchOutcome::NoMatch;
            };
            match obs {
                Value::Wildcard(DontKnow) => return MatchOutcome::Unknown,
                Value::Wildcard(DontCare) => return MatchOutcome::Match,
                _ => {}
            }
            MatchOutcome::from_bool(concrete_matches(concrete, obs))
        }
    }
}

fn concrete_matches(pattern: &Value, observed: &Value) -> bool {
    match (pattern, observed) {
        (Value::Range(r) | Value::BallInRange(r), Value::Scalar { value, .. }) => r.contains(*value),
        (Value::FuzzyLabel { membership, .. }, Value::Scalar { value, .. }) => membership.membership(*value) > 0.0,
        (Value::FuzzyLabel { name, .. }, Value::Text(t)) => name == t,
        (Value::Scalar { value: a, unit: ua }, Value::Scalar { value: b, unit: ub }) => a == b && ua == ub,
        _ => pattern == observed,
    }
}
