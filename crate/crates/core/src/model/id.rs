use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use super::ModelError;

/// Opaque, stable anchor for an element, edge or group.
///
/// Ids are restricted to ASCII letters, digits, `_` and `-` so they can be
/// written unquoted in the text format and reused as SVG `id` attributes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Id(String);

impl Id {
    pub fn new(raw: impl Into<String>) -> Result<Self, ModelError> {
        let raw = raw.into();
        if is_valid_id(&raw) {
            Ok(Id(raw))
        } else {
            Err(ModelError::InvalidId(raw))
        }
    }

    pub(crate) fn new_unchecked(raw: String) -> Self {
        debug_assert!(is_valid_id(&raw), "invalid id {raw:?}");
        Id(raw)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub fn is_valid_id(raw: &str) -> bool {
    !raw.is_empty()
        && raw
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Id {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Id::new(s)
    }
}

impl Borrow<str> for Id {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Id {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_token_characters() {
        assert!(Id::new("o1").is_ok());
        assert!(Id::new("state_on-2").is_ok());
    }

    #[test]
    fn rejects_whitespace_and_empty() {
        assert!(Id::new("").is_err());
        assert!(Id::new("a b").is_err());
        assert!(Id::new("x\"").is_err());
        assert!(Id::new("a.b").is_err());
    }
}
