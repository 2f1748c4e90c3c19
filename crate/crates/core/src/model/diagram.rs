use std::collections::{BTreeMap, BTreeSet};

use super::edge::Edge;
use super::element::{Element, ElementKind};
use super::group::Group;
use super::value::{AttrName, AttributeBinding, Value};
use super::{Id, ModelError};

/// A Tumbug scene graph.
///
/// Elements, edges and groups share one id namespace. Containment is a
/// forest recorded as child to parent. Bindings hold at most one value per
/// (owner, attribute).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagram {
    elements: BTreeMap<Id, Element>,
    containment: BTreeMap<Id, Id>,
    edges: BTreeMap<Id, Edge>,
    bindings: BTreeMap<Id, BTreeMap<AttrName, Value>>,
    groups: BTreeMap<Id, Group>,
    meta: BTreeMap<String, String>,
}

impl Diagram {
    pub fn new() -> Self {
        Diagram::default()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty() && self.edges.is_empty() && self.groups.is_empty()
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.elements.contains_key(id) || self.edges.contains_key(id) || self.groups.contains_key(id)
    }

    /// First unused id of the form `e<n>`.
    pub fn fresh_id(&self) -> Id {
        let mut n = self.elements.len() + self.edges.len() + self.groups.len() + 1;
        loop {
            let candidate = format!("e{n}");
            if !self.contains_id(&candidate) {
                return Id::new_unchecked(candidate);
            }
            n += 1;
        }
    }

    fn claim(&self, id: &Id) -> Result<(), ModelError> {
        if self.contains_id(id.as_str()) {
            Err(ModelError::DuplicateId(id.clone()))
        } else {
            Ok(())
        }
    }

    pub fn add_element(&mut self, e: Element, parent: Option<&Id>) -> Result<Id, ModelError> {
        let id = self.fresh_id();
        self.insert_element(id.clone(), e, parent)?;
        Ok(id)
    }

    pub fn insert_element(&mut self, id: Id, e: Element, parent: Option<&Id>) -> Result<(), ModelError> {
        self.claim(&id)?;
        if let Some(p) = parent {
            self.check_container(p)?;
        }
        if let Some(p) = parent {
            self.containment.insert(id.clone(), p.clone());
        }
        self.elements.insert(id, e);
        Ok(())
    }

    fn check_container(&self, parent: &Id) -> Result<(), ModelError> {
        let pe = self.elements.get(parent).ok_or_else(|| ModelError::UnknownParent(parent.clone()))?;
        if !pe.kind().is_container() {
            return Err(ModelError::ParentNotContainer { parent: parent.clone(), kind: pe.kind() });
        }
        Ok(())
    }

    /// Places an existing, uncontained element inside a container.
    pub fn set_parent(&mut self, child: &Id, parent: &Id) -> Result<(), ModelError> {
        if !self.elements.contains_key(child) {
            return Err(ModelError::UnknownElement(child.clone()));
        }
        self.check_container(parent)?;
        if self.containment.contains_key(child) {
            return Err(ModelError::AlreadyContained(child.clone()));
        }
        let mut cur = Some(parent);
        while let Some(c) = cur {
            if c == child {
                return Err(ModelError::ContainmentCycle { child: child.clone(), parent: parent.clone() });
            }
            cur = self.containment.get(c);
        }
        self.containment.insert(child.clone(), parent.clone());
        Ok(())
    }

    pub fn add_edge(&mut self, edge: Edge) -> Result<Id, ModelError> {
        let id = self.fresh_id();
        self.insert_edge(id.clone(), edge)?;
        Ok(id)
    }

    pub fn insert_edge(&mut self, id: Id, edge: Edge) -> Result<(), ModelError> {
        self.claim(&id)?;
        for end in edge.endpoints().chain(edge.moves()) {
            if !self.elements.contains_key(end) {
                return Err(ModelError::UnknownElement(end.clone()));
            }
        }
        self.edges.insert(id, edge);
        Ok(())
    }

    pub fn add_group(&mut self, g: Group) -> Result<Id, ModelError> {
        let id = self.fresh_id();
        self.insert_group(id.clone(), g)?;
        Ok(id)
    }

    pub fn insert_group(&mut self, id: Id, g: Group) -> Result<(), ModelError> {
        self.claim(&id)?;
        for r in g.refs() {
            if !self.elements.contains_key(r) && !self.edges.contains_key(r) {
                return Err(ModelError::UnknownElement(r.clone()));
            }
        }
        self.groups.insert(id, g);
        Ok(())
    }

    /// Whether `owner` may carry attribute bindings: Nonquans and change
    /// arrows only.
    pub fn can_host_attributes(&self, owner: &Id) -> Option<bool> {
        if let Some(e) = self.elements.get(owner) {
            return Some(e.kind().is_nonquan());
        }
        self.edges.get(owner).map(|e| e.kind().is_change())
    }

    pub fn bind_attribute(&mut self, owner: &Id, b: AttributeBinding) -> Result<(), ModelError> {
        b.check()?;
        match self.can_host_attributes(owner) {
            None => return Err(ModelError::UnknownOwner(owner.clone())),
            Some(false) => return Err(ModelError::IllegalAttributeHost(owner.clone())),
            Some(true) => {}
        }
        let slot = self.bindings.entry(owner.clone()).or_default();
        match slot.get(&b.attribute) {
            Some(existing) if *existing != b.value => Err(ModelError::ConflictingDuplicate {
                owner: owner.clone(),
                attribute: b.attribute,
            }),
            Some(_) => Ok(()),
            None => {
                slot.insert(b.attribute, b.value);
                Ok(())
            }
        }
    }

    /// Convenience for `bind_attribute` with a named attribute.
    pub fn bind(&mut self, owner: &Id, attribute: &str, value: Value) -> Result<(), ModelError> {
        self.bind_attribute(owner, AttributeBinding::named(attribute, value)?)
    }

    pub fn set_meta(&mut self, key: &str, value: &str) {
        self.meta.insert(key.to_string(), value.to_string());
    }

    pub fn elements(&self) -> &BTreeMap<Id, Element> {
        &self.elements
    }

    pub fn element(&self, id: &str) -> Option<&Element> {
        self.elements.get(id)
    }

    pub fn edges(&self) -> &BTreeMap<Id, Edge> {
        &self.edges
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn groups(&self) -> &BTreeMap<Id, Group> {
        &self.groups
    }

    pub fn containment(&self) -> &BTreeMap<Id, Id> {
        &self.containment
    }

    pub fn parent(&self, id: &str) -> Option<&Id> {
        self.containment.get(id)
    }

    pub fn children<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Id> + 'a {
        self.containment.iter().filter(move |(_, p)| p.as_str() == id).map(|(c, _)| c)
    }

    pub fn bindings(&self) -> &BTreeMap<Id, BTreeMap<AttrName, Value>> {
        &self.bindings
    }

    pub fn bindings_of(&self, owner: &str) -> impl Iterator<Item = (&AttrName, &Value)> {
        self.bindings.get(owner).into_iter().flatten()
    }

    pub fn binding(&self, owner: &str, attribute: &str) -> Option<&Value> {
        self.bindings.get(owner)?.get(&AttrName::named(attribute))
    }

    pub fn binding_count(&self) -> usize {
        self.bindings.values().map(BTreeMap::len).sum()
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn count_kind(&self, kind: ElementKind) -> usize {
        self.elements.values().filter(|e| e.kind() == kind).count()
    }

    /// Copy with ids renamed by structural position, so that two diagrams
    /// built in different orders or with different ids compare equal.
    pub fn canonicalize(&self) -> Diagram {
        let rename = canonical_names(self);
        let f = &mut |id: &Id| rename.get(id).cloned().unwrap_or_else(|| id.clone());
        let mut out = Diagram { meta: self.meta.clone(), ..Diagram::default() };
        for (id, e) in &self.elements {
            let mut e = e.clone();
            e.payload_mut().map_ids(f);
            out.elements.insert(f(id), e);
        }
        for (c, p) in &self.containment {
            out.containment.insert(f(c), f(p));
        }
        for (id, e) in &self.edges {
            let mut e = e.clone();
            e.map_ids(f);
            out.edges.insert(f(id), e);
        }
        for (id, g) in &self.groups {
            let mut g = g.clone();
            g.map_ids(f);
            out.groups.insert(f(id), g);
        }
        for (owner, b) in &self.bindings {
            out.bindings.insert(f(owner), b.clone());
        }
        out
    }
}

/// Colour refinement over elements, edges and groups, then renumbering by
/// final colour with the old id as tie-break.
fn canonical_names(d: &Diagram) -> BTreeMap<Id, Id> {
    let placeholder = Id::new_unchecked("_".into());
    let bindings_text = |id: &Id| -> String {
        d.bindings_of(id.as_str()).map(|(a, v)| format!("{a:?}={v};")).collect()
    };

    let mut nodes: Vec<(Id, char, String)> = Vec::new();
    let mut links: Vec<(Id, String, Id)> = Vec::new();
    for (id, e) in &d.elements {
        let mut p = e.payload().clone();
        p.map_ids(&mut |_| placeholder.clone());
        let sig = format!("{}|{:?}|{:?}|{:?}|{}", e.kind(), e.label(), p, e.position(), bindings_text(id));
        nodes.push((id.clone(), 'n', sig));
        for (i, r) in e.payload().refs().into_iter().enumerate() {
            links.push((id.clone(), format!("ref{i}"), r.clone()));
        }
    }
    for (c, p) in &d.containment {
        links.push((c.clone(), "in".into(), p.clone()));
    }
    for (id, e) in &d.edges {
        let sig = format!(
            "{}|{:?}|{:?}|{:?}|{:?}|{:?}|{:?}|{:?}|{}",
            e.kind(),
            e.label(),
            e.role(),
            e.direction(),
            e.attribute(),
            e.source().is_some(),
            e.target().is_some(),
            e.moves().is_some(),
            bindings_text(id)
        );
        nodes.push((id.clone(), 'a', sig));
        for (label, end) in [("src", e.source()), ("dst", e.target()), ("moves", e.moves())] {
            if let Some(end) = end {
                links.push((id.clone(), label.into(), end.clone()));
            }
        }
    }
    for (id, g) in &d.groups {
        let sig = match g {
            Group::StateDiagram(s) => format!(
                "SD|{}|{}|{}|{}",
                s.states.len(),
                s.tubes.len(),
                s.marker.is_some(),
                s.owner.is_some()
            ),
            Group::SplitTime(s) => format!("ST|{}|{:?}", s.branches().len(), s.probabilities()),
        };
        nodes.push((id.clone(), 'g', sig));
        match g {
            Group::StateDiagram(s) => {
                for m in &s.states {
                    links.push((id.clone(), "state".into(), m.clone()));
                }
                for t in &s.tubes {
                    links.push((id.clone(), "tube".into(), t.clone()));
                }
                for (label, r) in [("marker", &s.marker), ("owner", &s.owner)] {
                    if let Some(r) = r {
                        links.push((id.clone(), label.into(), r.clone()));
                    }
                }
            }
            Group::SplitTime(s) => {
                links.push((id.clone(), "trunk".into(), s.trunk().clone()));
                links.push((id.clone(), "junction".into(), s.junction().clone()));
                for (i, b) in s.branches().iter().enumerate() {
                    links.push((id.clone(), format!("branch{i}"), b.clone()));
                }
            }
        }
    }

    let index: BTreeMap<&Id, usize> = nodes.iter().enumerate().map(|(i, (id, _, _))| (id, i)).collect();
    let mut adj: Vec<Vec<(String, usize)>> = vec![Vec::new(); nodes.len()];
    for (from, label, to) in &links {
        if let (Some(&a), Some(&b)) = (index.get(from), index.get(to)) {
            adj[a].push((format!(">{label}"), b));
            adj[b].push((format!("<{label}"), a));
        }
    }

    let mut colour = ranks(nodes.iter().map(|(_, c, s)| format!("{c}{s}")).collect());
    let mut classes = colour.iter().collect::<BTreeSet<_>>().len();
    loop {
        let keys = (0..nodes.len())
            .map(|i| {
                let mut nb: Vec<(String, usize)> = adj[i].iter().map(|(l, j)| (l.clone(), colour[*j])).collect();
                nb.sort();
                format!("{}|{:?}", colour[i], nb)
            })
            .collect();
        let next = ranks(keys);
        let next_classes = next.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }

    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| (colour[a], &nodes[a].0).cmp(&(colour[b], &nodes[b].0)));
    let mut counters = BTreeMap::new();
    let mut out = BTreeMap::new();
    for i in order {
        let (id, prefix, _) = &nodes[i];
        let n = counters.entry(*prefix).or_insert(0usize);
        *n += 1;
        out.insert(id.clone(), Id::new_unchecked(format!("{prefix}{n}")));
    }
    out
}

fn ranks(keys: Vec<String>) -> Vec<usize> {
    let sorted: BTreeSet<&String> = keys.iter().collect();
    let pos: BTreeMap<&String, usize> = sorted.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter().map(|k| pos[k]).collect()
}
