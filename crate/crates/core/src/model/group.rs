use std::collections::BTreeSet;

use super::{Id, ModelError};

/// Branch probabilities of a split must sum to 1 within this tolerance.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// State Circles joined by Pathway Tubes, with at most one 0D Marker.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDiagramGroup {
    pub states: BTreeSet<Id>,
    pub tubes: BTreeSet<Id>,
    /// Where the marker sits: a member state, or a tube when in transition.
    pub marker: Option<Id>,
    /// Element this state diagram is attached to as an attribute.
    pub owner: Option<Id>,
}

impl StateDiagramGroup {
    pub fn new(states: BTreeSet<Id>, tubes: BTreeSet<Id>) -> Self {
        StateDiagramGroup { states, tubes, marker: None, owner: None }
    }

    pub fn with_marker(mut self, at: &Id) -> Self {
        self.marker = Some(at.clone());
        self
    }

    pub fn with_owner(mut self, owner: &Id) -> Self {
        self.owner = Some(owner.clone());
        self
    }
}

/// A Time edge forking through an XOR Box into alternative futures.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitTimeGroup {
    trunk: Id,
    branches: Vec<Id>,
    junction: Id,
    probabilities: Option<Vec<f64>>,
}

impl SplitTimeGroup {
    pub fn new(trunk: Id, branches: Vec<Id>, junction: Id, probabilities: Option<Vec<f64>>) -> Result<Self, ModelError> {
        if branches.is_empty() {
            return Err(ModelError::InvalidGroup("a split needs at least one branch".into()));
        }
        if let Some(p) = &probabilities {
            check_probabilities(p, branches.len()).map_err(ModelError::InvalidGroup)?;
        }
        Ok(SplitTimeGroup { trunk, branches, junction, probabilities })
    }

    pub fn trunk(&self) -> &Id {
        &self.trunk
    }

    pub fn branches(&self) -> &[Id] {
        &self.branches
    }

    pub fn junction(&self) -> &Id {
        &self.junction
    }

    pub fn probabilities(&self) -> Option<&[f64]> {
        self.probabilities.as_deref()
    }
}

pub(crate) fn check_probabilities(p: &[f64], branches: usize) -> Result<(), String> {
    if p.len() != branches {
        return Err(format!("{} probabilities for {} branches", p.len(), branches));
    }
    if let Some(bad) = p.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(format!("probability {bad} outside [0, 1]"));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(format!("branch probabilities sum to {sum}, not 1"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Group {
    StateDiagram(StateDiagramGroup),
    SplitTime(SplitTimeGroup),
}

impl Group {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Group::StateDiagram(_) => "StateDiagram",
            Group::SplitTime(_) => "SplitTime",
        }
    }

    /// Every id the group refers to.
    pub fn refs(&self) -> Vec<&Id> {
        match self {
            Group::StateDiagram(g) => g.states.iter().chain(&g.tubes).chain(&g.marker).chain(&g.owner).collect(),
            Group::SplitTime(g) => std::iter::once(&g.trunk).chain(&g.branches).chain([&g.junction]).collect(),
        }
    }

    pub(crate) fn map_ids(&mut self, f: &mut dyn FnMut(&Id) -> Id) {
        match self {
            Group::StateDiagram(g) => {
                g.states = g.states.iter().map(&mut *f).collect();
                g.tubes = g.tubes.iter().map(&mut *f).collect();
                g.marker = g.marker.as_ref().map(&mut *f);
                g.owner = g.owner.as_ref().map(&mut *f);
            }
            Group::SplitTime(g) => {
                g.trunk = f(&g.trunk);
                g.branches = g.branches.iter().map(&mut *f).collect();
                g.junction = f(&g.junction);
            }
        }
    }
}
