//! Flowcharts as State Diagrams: statements are State Circles, control
//! flow runs through Pathway Tubes, and the 0D Marker is the program counter.

use std::collections::BTreeSet;

use crate::model::{Diagram, EdgeKind, ElementKind, Group, Id, StateDiagramGroup};

use super::{arrow, id, Draft, TemplateError};

/// Walks longer than this are reported as non-terminating.
pub const MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowKind {
    Sequential,
    /// Statements `body_start..=body_end` (zero-based) run `iterations` times.
    Loop { body_start: usize, body_end: usize, iterations: usize },
    /// The first statement chooses the second (then) or third (else);
    /// both continue at the fourth.
    Branch { take_else: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Flowchart {
    pub diagram: Diagram,
    /// Labels chosen at each decision point.
    pub schedule: Vec<String>,
    /// Statement labels visited by the marker.
    pub trace: Vec<String>,
}

impl Flowchart {
    /// The trace written as `(S1 S2 ...)`.
    pub fn trace_text(&self) -> String {
        format_trace(&self.trace)
    }
}

pub fn format_trace(trace: &[String]) -> String {
    format!("({})", trace.join(" "))
}

pub fn build_flowchart(kind: FlowKind, statements: &[&str]) -> Result<Flowchart, TemplateError> {
    let n = statements.len();
    if n == 0 {
        return Err(TemplateError::EmptyProgram);
    }
    let mut t = Draft::new();
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    for (name, label) in names.iter().zip(statements) {
        t.circle(name, ElementKind::StateCircle, label, None);
    }
    let mut tubes = BTreeSet::new();
    let mut tube = |t: &mut Draft, a: usize, b: usize, label: &str| {
        let e = arrow(EdgeKind::Tube, &names[a], &names[b]);
        let e = if label.is_empty() { e } else { e.with_label(label) };
        tubes.insert(t.edge(&format!("p{}", tubes.len() + 1), e));
    };
    let schedule = match kind {
        FlowKind::Sequential => {
            for i in 1..n {
                tube(&mut t, i - 1, i, "");
            }
            Vec::new()
        }
        FlowKind::Loop { body_start, body_end, iterations } => {
            if body_start > body_end || body_end + 1 >= n {
                return Err(TemplateError::InvalidProgram(format!(
                    "loop body {}..={} needs a statement after it in a program of {n}",
                    body_start + 1,
                    body_end + 1
                )));
            }
            if iterations == 0 {
                return Err(TemplateError::InvalidProgram("a loop body runs at least once".into()));
            }
            for i in 1..n {
                tube(&mut t, i - 1, i, if i == body_end + 1 { "exit" } else { "" });
            }
            tube(&mut t, body_end, body_start, "repeat");
            let mut s = vec!["repeat".to_string(); iterations - 1];
            s.push("exit".into());
            s
        }
        FlowKind::Branch { take_else } => {
            if n < 4 {
                return Err(TemplateError::InvalidProgram(format!("a branch needs four statements, got {n}")));
            }
            tube(&mut t, 0, 1, "then");
            tube(&mut t, 0, 2, "else");
            tube(&mut t, 1, 3, "");
            tube(&mut t, 2, 3, "");
            for i in 4..n {
                tube(&mut t, i - 1, i, "");
            }
            vec![if take_else { "else" } else { "then" }.to_string()]
        }
    };
    let states = names.iter().map(|s| id(s)).collect();
    let g = StateDiagramGroup::new(states, tubes).with_marker(&id("s1"));
    t.d.insert_group(id("program"), Group::StateDiagram(g)).expect("program group");
    t.d.set_meta("schedule", &schedule.join(","));
    let diagram = t.finish();
    let trace = trace(&diagram, &schedule)?;
    Ok(Flowchart { diagram, schedule, trace })
}

/// Moves the marker of the first marked State Diagram until it reaches a
/// state with no way out. A single outgoing tube is taken automatically; a
/// choice consumes the next schedule entry, matched against tube labels.
pub fn trace(d: &Diagram, schedule: &[String]) -> Result<Vec<String>, TemplateError> {
    let (g, start) = d
        .groups()
        .values()
        .find_map(|g| match g {
            Group::StateDiagram(s) => s.marker.as_ref().filter(|m| s.states.contains(*m)).map(|m| (s, m)),
            _ => None,
        })
        .ok_or_else(|| TemplateError::Trace("no State Diagram with a marker on a state".into()))?;
    let label = |s: &Id| d.element(s.as_str()).and_then(|e| e.label()).unwrap_or(s.as_str()).to_string();
    let mut at = start.clone();
    let mut out = vec![label(&at)];
    let mut choices = schedule.iter();
    for _ in 0..MAX_STEPS {
        let exits: Vec<_> = g
            .tubes
            .iter()
            .filter_map(|t| d.edge(t.as_str()))
            .filter(|e| e.source() == Some(&at) && e.target().is_some())
            .collect();
        let next = match exits.as_slice() {
            [] => {
                if let Some(extra) = choices.next() {
                    return Err(TemplateError::Trace(format!("schedule entry {extra:?} was never used")));
                }
                return Ok(out);
            }
            [only] => only,
            _ => {
                let want = choices
                    .next()
                    .ok_or_else(|| TemplateError::Trace(format!("schedule exhausted at {}", label(&at))))?;
                exits.iter().find(|e| e.label() == Some(want.as_str())).ok_or_else(|| {
                    TemplateError::Trace(format!("no tube labeled {want:?} leaves {}", label(&at)))
                })?
            }
        };
        at = next.target().expect("filtered").clone();
        out.push(label(&at));
    }
    Err(TemplateError::Trace(format!("no end state within {MAX_STEPS} steps")))
}
