use std::fmt;

use crate::model::EdgeKind;

use super::GrammarError;

const DEFAULT_TABLE: &str = include_str!("../../data/legality.table");

/// How a change arrow meets the Nonquans around it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    SolitaryArrow,
    SolitaryNonquan,
    ArrowOut,
    ArrowIn,
    ArrowBetween,
    SelfLoop,
}

impl Shape {
    pub const ALL: [Shape; 6] = [
        Shape::SolitaryArrow,
        Shape::SolitaryNonquan,
        Shape::ArrowOut,
        Shape::ArrowIn,
        Shape::ArrowBetween,
        Shape::SelfLoop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::SolitaryArrow => "SolitaryArrow",
            Shape::SolitaryNonquan => "SolitaryNonquan",
            Shape::ArrowOut => "ArrowOut",
            Shape::ArrowIn => "ArrowIn",
            Shape::ArrowBetween => "ArrowBetween",
            Shape::SelfLoop => "SelfLoop",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Shape::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Shape of an edge from its endpoints.
    pub fn of_endpoints(source: Option<&str>, target: Option<&str>) -> Shape {
        match (source, target) {
            (None, None) => Shape::SolitaryArrow,
            (Some(_), None) => Shape::ArrowOut,
            (None, Some(_)) => Shape::ArrowIn,
            (Some(a), Some(b)) if a == b => Shape::SelfLoop,
            (Some(_), Some(_)) => Shape::ArrowBetween,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Total map from (shape, change-arrow kind) to legal/illegal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegalityTable {
    cells: [[bool; 4]; 6],
}

fn column(kind: EdgeKind) -> Option<usize> {
    EdgeKind::CHANGE.iter().position(|k| *k == kind)
}

impl LegalityTable {
    /// Parses the plain-text table: one row per shape, four `L`/`I`
    /// columns in the order Time, Motion, Force, Causation. `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Self, GrammarError> {
        let mut cells: [Option<[bool; 4]>; 6] = [None; 6];
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| GrammarError::Table { line: n + 1, message: msg };
            let mut words = line.split_whitespace();
            let name = words.next().unwrap_or_default();
            let shape = Shape::from_name(name).ok_or_else(|| bad(format!("unknown shape {name:?}")))?;
            let row = words
                .map(|w| match w {
                    "L" => Ok(true),
                    "I" => Ok(false),
                    other => Err(bad(format!("expected L or I, found {other:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let row: [bool; 4] = row
                .try_into()
                .map_err(|r: Vec<bool>| bad(format!("expected 4 columns, found {}", r.len())))?;
            let slot = &mut cells[shape as usize];
            if slot.is_some() {
                return Err(bad(format!("shape {shape} listed twice")));
            }
            *slot = Some(row);
        }
        let mut out = [[false; 4]; 6];
        for shape in Shape::ALL {
            out[shape as usize] = cells[shape as usize].ok_or(GrammarError::Table {
                line: 0,
                message: format!("missing row for {shape}"),
            })?;
        }
        Ok(LegalityTable { cells: out })
    }

    /// `None` for edge kinds outside the table (Tube, Relationship).
    pub fn is_legal(&self, shape: Shape, kind: EdgeKind) -> Option<bool> {
        column(kind).map(|c| self.cells[shape as usize][c])
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("# shape Time Motion Force Causation\n");
        for shape in Shape::ALL {
            s.push_str(shape.name());
            for legal in self.cells[shape as usize] {
                s.push_str(if legal { " L" } else { " I" });
            }
            s.push('\n');
        }
        s
    }
}

impl Default for LegalityTable {
    fn default() -> Self {
        LegalityTable::parse(DEFAULT_TABLE).expect("shipped legality table parses")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_cells() {
        let t = LegalityTable::default();
        use EdgeKind::*;
        use Shape::*;
        let legal = [
            (Motion, [SolitaryArrow, ArrowOut, ArrowBetween, SelfLoop].as_slice()),
            (Force, &[SolitaryArrow, ArrowOut, ArrowIn, ArrowBetween]),
            (Causation, &[SolitaryArrow, ArrowOut, ArrowIn, ArrowBetween, SelfLoop]),
            (Time, &[SolitaryArrow]),
        ];
        for (kind, shapes) in legal {
            for s in Shape::ALL {
                let want = s == SolitaryNonquan || shapes.contains(&s);
                assert_eq!(t.is_legal(s, kind), Some(want), "{s} {kind}");
            }
        }
        assert_eq!(t.is_legal(SelfLoop, Tube), None);
    }

    #[test]
    fn text_round_trip() {
        let t = LegalityTable::default();
        assert_eq!(LegalityTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn rejects_partial_tables() {
        assert!(LegalityTable::parse("SolitaryArrow L L L L\n").is_err());
        assert!(LegalityTable::parse(&LegalityTable::default().to_text().replace("SelfLoop I L I L", "SelfLoop I L I"))
            .is_err());
        assert!(LegalityTable::parse(&format!("{}ArrowIn L L L L\n", LegalityTable::default().to_text())).is_err());
        assert!(LegalityTable::parse("Sideways L L L L\n").is_err());
    }

    #[test]
    fn endpoint_shapes() {
        assert_eq!(Shape::of_endpoints(None, None), Shape::SolitaryArrow);
        assert_eq!(Shape::of_endpoints(Some("a"), Some("a")), Shape::SelfLoop);
        assert_eq!(Shape::of_endpoints(Some("a"), Some("b")), Shape::ArrowBetween);
        assert_eq!(Shape::of_endpoints(None, Some("b")), Shape::ArrowIn);
    }
}
